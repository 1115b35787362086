#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crnf/report.hpp"
#include "crnf/tables.hpp"

using namespace crnf;

namespace {

struct Options {
    std::string format = "text";
    std::string tables_dir;
    std::string variant = "printed";
    bool timing = false;
    bool dump_tables = false;
};

TableVariant variant_of(const std::string &s)
{
    return s == "corrected" ? TableVariant::corrected : TableVariant::printed;
}

Scalar scalar_arg(const std::string &s)
{
    return parse_scalar(s);
}

std::array<Scalar, 2> base_arg(const std::string &s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw error(errc::bad_input, "--base expects r0,t0");
    return {parse_scalar(s.substr(0, comma)), parse_scalar(s.substr(comma + 1))};
}

json dump_tables()
{
    std::ifstream in(table_dir() + "/manifest.json");
    if (!in)
        throw error(errc::bad_input, "no manifest.json in " + table_dir());
    json manifest = json::parse(in);
    json out = json::object();
    out["manifest.json"] = manifest;
    for (auto &[file, digest] : manifest["sha256"].items()) {
        (void)digest;
        out[file] = load_table(file);
    }
    return out;
}

json dump_model(const std::string &model, int order, TableVariant v)
{
    if (model == "flat")
        return to_json(gm_flat_model(order));
    if (model == "thm31")
        return to_json(thm31_model(order, v));
    if (model == "thm33")
        return to_json(thm33_model(order, v));
    return to_json(affine_model(affine_label(model), order));
}

void emit(const VerificationReport &rep, const Options &o)
{
    if (o.format == "json")
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
}

std::string file_digest(const std::string &path)
{
    if (path == "-")
        return {};
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact verification of CR normal-form and affine surface tables"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tables-dir", o.tables_dir, "table directory (overrides CRNF_TABLE_DIR)");
    app.add_option("--tables", o.variant, "printed tables or the corrected variant")
        ->check(CLI::IsMember({"printed", "corrected"}));
    app.add_flag("--timing", o.timing, "add wall-clock seconds to the report");
    app.add_flag("--dump-tables", o.dump_tables, "print every table resource as JSON");

    std::function<VerificationReport()> run;
    std::string file, model, theorem, theta, lambda = "1", alpha = "0", rho = "0", base;
    int order = 8;

    auto *cr = app.add_subcommand("cr", "CR hypersurface verbs");
    cr->require_subcommand(1);
    auto *vf = cr->add_subcommand("verify-flat", "flat model automorphism invariance");
    vf->add_option("--order", order)->required();
    vf->callback([&] { run = [&] { return verify_flat(order); }; });

    auto *vt = cr->add_subcommand("verify-theorem", "all checks for one theorem");
    vt->add_option("theorem", theorem)->required()->check(CLI::IsMember({"3.1", "3.2", "3.3"}));
    vt->add_option("--theta", theta, "rational value for theta");
    vt->add_option("--order", order)->required();
    vt->callback([&] {
        run = [&] {
            std::optional<Scalar> th;
            if (!theta.empty())
                th = scalar_arg(theta);
            return verify_theorem(theorem, order, th, variant_of(o.variant));
        };
    });

    auto *br = cr->add_subcommand("brackets", "structure constants against the printed table");
    br->add_option("--model", model)->required()->check(CLI::IsMember({"thm31", "thm33"}));
    br->callback([&] { run = [&] { return verify_brackets(model, variant_of(o.variant)); }; });

    auto *tg = cr->add_subcommand("tangency", "tangency residuals of the symmetry basis");
    tg->add_option("--model", model)->required()->check(CLI::IsMember({"thm31", "thm33"}));
    tg->callback([&] { run = [&] { return verify_tangency(model, variant_of(o.variant)); }; });

    auto *ds = cr->add_subcommand("derived-series", "alias of brackets");
    ds->add_option("--model", model)->required()->check(CLI::IsMember({"thm31", "thm33"}));
    ds->callback([&] { run = [&] { return verify_brackets(model, variant_of(o.variant)); }; });

    auto *ic = cr->add_subcommand("ideal-check", "alias of tube-criterion");
    ic->add_option("--model", model)->required()->check(CLI::IsMember({"thm31", "thm33"}));
    ic->callback([&] { run = [&] { return verify_tube(model, variant_of(o.variant)); }; });

    auto *cl = cr->add_subcommand("classify", "normal form, invariants and branch of a graph");
    cl->add_option("file", file)->required();
    cl->callback([&] { run = [&] { return classify_report(cr_graph_from_json(read_json_file(file))); }; });

    auto *inv = cr->add_subcommand("invariants", "alias of classify");
    inv->add_option("file", file)->required();
    inv->callback([&] { run = [&] { return classify_report(cr_graph_from_json(read_json_file(file))); }; });

    auto *tr = cr->add_subcommand("transform", "push a graph through a flat-model automorphism");
    tr->add_option("file", file)->required();
    tr->add_option("--lambda", lambda);
    tr->add_option("--alpha", alpha);
    tr->add_option("--rho", rho);
    tr->callback([&] {
        run = [&] {
            ResidualParams p;
            p.lambda = scalar_arg(lambda);
            p.alpha = scalar_arg(alpha);
            p.rho = scalar_arg(rho);
            return transform_report(cr_graph_from_json(read_json_file(file)), p);
        };
    });

    auto *nm = cr->add_subcommand("normalize", "normalize the residual group parameters");
    nm->add_option("file", file)->required();
    nm->callback([&] { run = [&] { return normalize_report(cr_graph_from_json(read_json_file(file))); }; });

    auto *rt = cr->add_subcommand("resolve-tables", "re-derive the tables from the symmetry family");
    rt->add_option("--model", model)->required()->check(CLI::IsMember({"thm31", "thm33"}));
    rt->add_option("--order", order)->required();
    rt->callback([&] { run = [&] { return resolve_tables(model, order, variant_of(o.variant)); }; });

    auto *dm = cr->add_subcommand("dump-model", "a model graph in the series format");
    dm->add_option("--model", model)->required()->check(CLI::IsMember({"flat", "thm31", "thm33"}));
    dm->add_option("--order", order)->required();

    auto *af = app.add_subcommand("affine", "affine surface verbs");
    af->require_subcommand(1);
    auto *ac = af->add_subcommand("classify", "prenormalize and classify u = F(x, y)");
    ac->add_option("file", file)->required();
    ac->callback([&] { run = [&] { return affine_classify_report(affine_graph_from_json(read_json_file(file))); }; });

    auto *av = af->add_subcommand("verify-model", "all checks for one affine model");
    av->add_option("model", model)->required()->check(CLI::IsMember({"3", "flat", "theta"}));
    av->add_option("--order", order)->required();
    av->callback([&] { run = [&] { return affine_verify_model(model, order); }; });

    auto *tl = af->add_subcommand("tube-lift", "graph of a parametrized surface at a point");
    tl->add_option("file", file, "JSON {\"components\": [three expressions in r, t]}")->required();
    tl->add_option("--base", base, "r0,t0")->required();
    tl->add_option("--order", order);
    tl->callback([&] {
        run = [&] {
            json j = read_json_file(file);
            if (!j.contains("components") || j["components"].size() != 3)
                throw error(errc::bad_input, file + ": need \"components\" with three expressions");
            auto c = j["components"].get<std::array<std::string, 3>>();
            auto b = base_arg(base);
            return tube_lift_report(c, b[0], b[1], order);
        };
    });

    auto *adm = af->add_subcommand("dump-model", "an affine model graph in the series format");
    adm->add_option("model", model)->required()->check(CLI::IsMember({"3", "flat", "theta"}));
    adm->add_option("--order", order)->required();

    auto *tc = app.add_subcommand("tube-criterion", "maximally real abelian ideal check");
    tc->add_option("--model", model)->required()->check(CLI::IsMember({"thm31", "thm33"}));
    tc->callback([&] { run = [&] { return verify_tube(model, variant_of(o.variant)); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    std::string command = "crnf";
    for (int k = 1; k < argc; ++k)
        command += std::string(" ") + argv[k];

    try {
        if (!o.tables_dir.empty())
            set_table_dir(o.tables_dir);
        if (o.dump_tables) {
            std::cout << dump_tables().dump(2) << "\n";
            return 0;
        }
        if (dm->parsed() || adm->parsed()) {
            std::cout << dump_model(model, order, variant_of(o.variant)).dump(2) << "\n";
            return 0;
        }
        if (!run) {
            std::cerr << app.help();
            return 2;
        }
        auto t0 = std::chrono::steady_clock::now();
        VerificationReport rep = run();
        rep.command = command;
        if (!file.empty() && file != "-")
            rep.inputs[file] = file_digest(file);
        if (o.timing)
            rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(rep, o);
        return rep.overall() == Status::pass ? 0 : 1;
    } catch (const error &e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return 2;
    } catch (const json::exception &e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
}
