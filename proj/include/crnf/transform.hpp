#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnf/cr.hpp"
#include "crnf/series.hpp"

namespace crnf {

struct ResidualParams {
    Scalar lambda = Scalar(1);
    Scalar alpha;
    Scalar rho;

    // lambda = lambda_re + i lambda_im, alpha = alpha_re + i alpha_im, rho
    static ResidualParams formal();
    std::string str() const;
};

// (2,0,0), (i,0,0), (1,1,0), (1,i,0), (1,0,1), (1+i/2, 1-i, 3)
std::vector<ResidualParams> flat_sample_params();

// The isotropy group of the flat model, expanded through `order` in (z, zeta, w).
MapGerm flat_automorphism(const ResidualParams &p, int order);

// Graph of the image of g under the holomorphic germ M (holo chart to holo chart).
HypersurfaceGraph pushforward_graph(const HypersurfaceGraph &g, const MapGerm &M);

struct RescalingFactor {
    std::optional<Scalar> factor; // absent when the source coefficient vanishes
    std::string note;
};
// F'30020 / F30020 and F'50010 / F50010 under flat_automorphism(p).
std::pair<RescalingFactor, RescalingFactor> invariant_rescaling(const HypersurfaceGraph &g, const ResidualParams &p);

struct Normalization {
    ResidualParams params;
    HypersurfaceGraph graph;
    BranchLabel branch;
    // other admissible choices for lambda, or why none is listed
    std::vector<std::string> alternatives;
    std::vector<std::string> log;
};
Normalization normalize_residuals(const HypersurfaceGraph &g);

} // namespace crnf
