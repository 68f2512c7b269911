#include "hgflow/driver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hgflow/geometry.hpp"

namespace hgflow {

AfSweepResult verify_af_sweep(int m) {
    AfSweepResult result;
    result.m = m;
    result.min_gap_rel = std::numeric_limits<double>::infinity();
    result.max_ball_gap_rel = 0.0;

    struct Member {
        ShapeSpec spec;
        std::string label;
        bool is_ball;
    };
    std::vector<Member> family;
    for (double r : {0.5, 1.0, 2.0}) {
        std::ostringstream label;
        label << "sphere r=" << r;
        family.push_back({SphereShape{r}, label.str(), true});
    }
    for (int mode : {1, 2}) {
        for (double eps : {0.05, 0.1, 0.2}) {
            std::ostringstream label;
            label << "cosine eps=" << eps << " mode=" << mode;
            family.push_back({CosineShape{1.0, eps, mode}, label.str(), false});
        }
    }
    for (double d : {0.1, 0.3}) {
        std::ostringstream label;
        label << "offcenter d=" << d;
        family.push_back({OffcenterShape{1.0, d}, label.str(), true});
    }

    bool ok = true;
    for (int n : {2, 3, 4}) {
        auto grid = make_grid(n, m);
        for (const Member& member : family) {
            const RadialField field = make_shape(member.spec, grid);
            const GeometryFields geom = compute_geometry(field);
            const QuermassReport rep = quermass_all(geom, field);
            AfSweepEntry entry;
            entry.n = n;
            entry.label = member.label;
            entry.is_ball = member.is_ball;
            entry.vol = rep.a(-1);
            entry.a_nm2 = rep.a(n - 2);
            entry.af_gap = rep.af_gap;
            entry.gap_rel = rep.af_gap / std::max(1.0, entry.a_nm2);
            result.min_gap_rel = std::min(result.min_gap_rel, entry.gap_rel);
            if (member.is_ball) {
                const double ball_rel = std::abs(rep.af_gap) / entry.a_nm2;
                result.max_ball_gap_rel = std::max(result.max_ball_gap_rel, ball_rel);
                if (ball_rel > 1e-6) ok = false;
            }
            result.entries.push_back(std::move(entry));
        }
    }
    if (result.min_gap_rel < -1e-6) ok = false;
    result.pass = ok;
    return result;
}

IdentityStudyResult identities_study(const std::vector<int>& ms, const std::vector<int>& ns,
                                     double r0, double eps, int mode) {
    IdentityStudyResult result;
    result.min_order = std::numeric_limits<double>::infinity();
    result.max_grad_res = 0.0;

    for (int n : ns) {
        std::vector<IdentityRow> rows;
        for (int m : ms) {
            auto grid = make_grid(n, m);
            const RadialField field = make_shape(CosineShape{r0, eps, mode}, grid);
            const GeometryFields geom = compute_geometry(field);
            IdentityRow row;
            row.n = n;
            row.m = m;
            row.mink_res_0 = std::abs(minkowski_residual(geom, 0));
            row.mink_res_nm1 = std::abs(minkowski_residual(geom, n - 1));
            row.grad_res = gradient_identity_residual(geom);
            result.max_grad_res = std::max(result.max_grad_res, row.grad_res);
            rows.push_back(row);
            result.rows.push_back(row);
        }
        for (int k_case = 0; k_case < 2; ++k_case) {
            double order = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                const double coarse = k_case == 0 ? rows[i].mink_res_0 : rows[i].mink_res_nm1;
                const double fine = k_case == 0 ? rows[i + 1].mink_res_0 : rows[i + 1].mink_res_nm1;
                const double ratio = std::log2(coarse / fine)
                    / std::log2(static_cast<double>(rows[i + 1].m) / rows[i].m);
                order = std::min(order, ratio);
            }
            IdentityOrder entry;
            entry.n = n;
            entry.k = k_case == 0 ? 0 : n - 1;
            entry.order = order;
            result.orders.push_back(entry);
            result.min_order = std::min(result.min_order, order);
        }
    }
    result.pass = result.min_order >= 1.9;
    return result;
}

} // namespace hgflow
