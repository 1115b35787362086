#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnf/affine.hpp"
#include "crnf/io.hpp"
#include "crnf/transform.hpp"

namespace crnf {

enum class Status { pass, fail, partial };
const char *status_name(Status s);

struct CheckRecord {
    std::string name;
    Status status = Status::fail;
    std::optional<int> feasible_order;
    std::string detail;
    json witness; // always set for failures
};

struct VerificationReport {
    std::string command;
    std::map<std::string, std::string> inputs; // name -> sha256
    std::vector<CheckRecord> checks;
    json output; // data produced by the command (graphs, tables), may be null
    bool text_output = false; // print `output` in text mode too
    std::optional<double> seconds; // only when requested; breaks byte-identity

    CheckRecord &check(const std::string &name, bool ok, const std::string &detail = {}, json witness = nullptr,
                       std::optional<int> feasible_order = std::nullopt);
    CheckRecord &partial(const std::string &name, const std::string &detail, json witness = nullptr);
    // fail if any check failed, else partial if any is partial; an empty report fails
    Status overall() const;
    void append(const VerificationReport &other, const std::string &prefix = {});

    json to_json() const;
    std::string to_text() const;
};

// Each returns the checks behind one CLI verb.
VerificationReport verify_flat(int order);
// "3.1", "3.2" or "3.3"; theta substitutes a value for the formal parameter
VerificationReport verify_theorem(const std::string &which, int order, const std::optional<Scalar> &theta = {},
                                  TableVariant v = TableVariant::printed);
// tangency of e1..e5 and the formal family against the model graph
VerificationReport verify_tangency(const std::string &model, TableVariant v = TableVariant::printed);
VerificationReport verify_brackets(const std::string &model, TableVariant v = TableVariant::printed);
VerificationReport verify_tube(const std::string &model, TableVariant v = TableVariant::printed);
VerificationReport resolve_tables(const std::string &model, int order, TableVariant v = TableVariant::printed);
VerificationReport classify_report(const HypersurfaceGraph &g);
VerificationReport transform_report(const HypersurfaceGraph &g, const ResidualParams &p);
VerificationReport normalize_report(const HypersurfaceGraph &g);

// "3" / "BRANCH3", "flat", "theta"
std::string affine_label(const std::string &name);
VerificationReport affine_verify_model(const std::string &label, int order);
VerificationReport affine_classify_report(const AffineGraph &g);
VerificationReport tube_lift_report(const std::array<std::string, 3> &comps, const Scalar &r0, const Scalar &t0,
                                    int order);

} // namespace crnf
