#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "crnf/io.hpp"
#include "crnf/report.hpp"
#include "rand.hpp"

using namespace crnf;
using crnf::testing::Gen;

namespace {

errc code_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return errc::bad_input;
}

json flat_doc()
{
    return json::parse(R"({"kind": "cr_graph", "label": "t",
        "chart": {"name": "cr", "variables": ["z", "zeta", "zb", "zetab", "v"], "weights": [1, 1, 1, 1, 2],
                  "pairing": [2, 3, 0, 1, 4]},
        "order": 4, "terms": [{"exp": [1, 0, 1, 0, 0], "coeff": "1"}, {"exp": [2, 0, 0, 1, 0], "coeff": "1/2"},
                              {"exp": [0, 1, 2, 0, 0], "coeff": "1/2"}]})");
}

} // namespace

TEST(Io, SeriesFormat)
{
    json j = to_json(parse_series("1/2*x^2 + theta*x*y", affine_chart(), 4));
    EXPECT_EQ(j["chart"]["name"], "affine");
    EXPECT_EQ(j["order"], 4);
    EXPECT_EQ(j["terms"].size(), 2u);
    EXPECT_EQ(to_json(Series::variable(cr_chart(), 0))["order"], "exact");

    auto g = cr_graph_from_json(flat_doc());
    EXPECT_EQ(g.F, parse_series("z*zb + 1/2*z^2*zetab + 1/2*zeta*zb^2", cr_chart(), 4));
    EXPECT_EQ(g.label, "t");
    EXPECT_TRUE(same_chart(g.F.chart_ptr(), cr_chart()));
}

TEST(Io, Errors)
{
    json bad = flat_doc();
    bad["terms"][0]["exp"] = {1, 0, 1};
    EXPECT_EQ(code_of([&] { series_from_json(bad); }), errc::exponent_length);

    bad = flat_doc();
    bad["terms"][0]["coeff"] = "nosuch";
    EXPECT_EQ(code_of([&] { series_from_json(bad); }), errc::unknown_parameter);

    bad = flat_doc();
    bad["terms"][0]["exp"] = {5, 0, 0, 0, 0};
    EXPECT_EQ(code_of([&] { series_from_json(bad); }), errc::bad_input);

    EXPECT_EQ(code_of([&] { affine_graph_from_json(flat_doc()); }), errc::chart_mismatch);
    EXPECT_EQ(code_of([&] { cr_graph_from_json(to_json(affine_model("FLAT", 4))); }), errc::chart_mismatch);

    std::string path = ::testing::TempDir() + "crnf_bad.json";
    {
        std::ofstream out(path);
        out << "{\"kind\": ";
    }
    EXPECT_EQ(code_of([&] { read_json_file(path); }), errc::parse_error);
    std::remove(path.c_str());
    EXPECT_EQ(code_of([&] { read_json_file("/nonexistent/crnf.json"); }), errc::bad_input);
}

TEST(Io, GraphsAndFields)
{
    auto g = thm33_model(10);
    auto back = cr_graph_from_json(json::parse(to_json(g).dump()));
    EXPECT_EQ(back.F, g.F);
    auto a = affine_model("THETA", 7);
    EXPECT_EQ(affine_graph_from_json(json::parse(to_json(a).dump())).F, a.F);
    for (auto &f : model_basis("thm31").fields)
        EXPECT_EQ(field_from_json(json::parse(to_json(f).dump())), f);
}

TEST(IoProperty, RoundTrip)
{
    Gen gen(61);
    for (auto c : {cr_chart(), holo_chart(), affine_chart(), affine_field_chart()})
        for (int k = 0; k < 40; ++k) {
            int order = gen.coin(20) ? kExact : static_cast<int>(gen.num(1, 7));
            Series s = gen.series(c, order == kExact ? 6 : order, 6, true, true);
            if (order == kExact)
                s = s.with_order(kExact);
            std::string text = to_json(s).dump();
            Series t = series_from_json(json::parse(text));
            EXPECT_EQ(t, s);
            EXPECT_TRUE(same_chart(t.chart_ptr(), c));
            EXPECT_EQ(to_json(t).dump(), text);
        }
}

TEST(Reports, Deterministic)
{
    auto a = verify_brackets("thm31").to_json().dump(2);
    auto b = verify_brackets("thm31").to_json().dump(2);
    EXPECT_EQ(a, b);
    auto c = affine_verify_model("theta", 7).to_json().dump();
    EXPECT_EQ(c, affine_verify_model("theta", 7).to_json().dump());
    EXPECT_EQ(json::parse(c)["overall"], "PASS");
}

TEST(Reports, Overall)
{
    VerificationReport r;
    EXPECT_EQ(r.overall(), Status::fail);
    r.check("a", true);
    EXPECT_EQ(r.overall(), Status::pass);
    r.partial("b", "order too low");
    EXPECT_EQ(r.overall(), Status::partial);
    auto &f = r.check("c", false, "broken");
    EXPECT_FALSE(f.witness.is_null());
    EXPECT_EQ(r.overall(), Status::fail);
}
