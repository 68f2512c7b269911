#pragma once

#include <string>
#include <vector>

#include "hgflow/quermass.hpp"
#include "hgflow/shapes.hpp"

namespace hgflow {

/// One member of the verification family with its quermassintegral report.
struct AfSweepEntry {
    int n = 0;
    std::string label;
    bool is_ball = false;
    double vol = 0.0;
    double a_nm2 = 0.0;
    double af_gap = 0.0;
    double gap_rel = 0.0; // af_gap / max(1, A_{n-2})
};

struct AfSweepResult {
    int m = 0;
    std::vector<AfSweepEntry> entries;
    double min_gap_rel = 0.0;
    double max_ball_gap_rel = 0.0; // max |af_gap| / A_{n-2} over ball members
    bool pass = false;
};

/// Fixed documented family (spheres r in {0.5,1,2}; cosine r0=1,
/// eps in {0.05,0.1,0.2}, mode in {1,2}; offcenter r=1, d in {0.1,0.3}) swept
/// over n in {2,3,4}. Passes when min gap_rel >= -1e-6 and every ball member
/// has |af_gap| <= 1e-6 A_{n-2}.
AfSweepResult verify_af_sweep(int m = 2048);

struct IdentityRow {
    int n = 0;
    int m = 0;
    double mink_res_0 = 0.0;
    double mink_res_nm1 = 0.0;
    double grad_res = 0.0;
};

struct IdentityOrder {
    int n = 0;
    int k = 0;
    double order = 0.0; // least of the pairwise refinement orders
};

struct IdentityStudyResult {
    std::vector<IdentityRow> rows;
    std::vector<IdentityOrder> orders;
    double min_order = 0.0;
    double max_grad_res = 0.0;
    bool pass = false; // min_order >= 1.9
};

/// Grid-refinement study of the Minkowski residuals (k = 0 and k = n-1) and
/// the gradient identity on ρ = r0 + eps cos(mode ψ).
IdentityStudyResult identities_study(const std::vector<int>& ms = {128, 256, 512},
                                     const std::vector<int>& ns = {2, 3},
                                     double r0 = 1.0, double eps = 0.2, int mode = 1);

} // namespace hgflow
