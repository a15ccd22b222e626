#include "gzk/report.hpp"

#include <json.hpp>

namespace gzk::report {

using nlohmann::json;

std::string groundstate_json(const groundstate::GroundState& gs) {
    const Grid& g = gs.profile.grid();
    json j{{"k", gs.k},
           {"L", g.Lx()},
           {"N", g.nx()},
           {"mass_sq", gs.mass_sq},
           {"grad_sq", gs.grad_sq},
           {"potential", gs.potential},
           {"residual", gs.residual},
           {"sharp_constant", gs.sharp_constant},
           {"iterations", gs.iterations},
           {"s_k", static_cast<double>(gs.k - 2) / gs.k}};
    if (gs.k >= 2) {
        const auto rq = groundstate::reference_quantities(gs);
        j["ref_quantities"] = json{{"s_k", rq.s_k},
                                   {"HQ_MQ", rq.HQ_MQ},
                                   {"HQ_MQ_raw", rq.HQ_MQ_raw},
                                   {"gradQ_Q", rq.gradQ_Q},
                                   {"gradQ_Q_raw", rq.gradQ_Q_raw}};
    }
    return j.dump(2) + "\n";
}

std::string threshold_json(const functionals::ThresholdReport& r) {
    const json j{{"k", r.k},
                 {"mass", r.mass},
                 {"energy", r.energy},
                 {"grad_sq", r.grad_sq},
                 {"C_kT", r.C_kT},
                 {"A_k", r.A_k},
                 {"B_k", r.B_k},
                 {"x0", r.x0},
                 {"f_x0", r.f_x0},
                 {"X0", r.X0},
                 {"gr0_holds", r.gr0_holds},
                 {"gr1_holds", r.gr1_holds},
                 {"gr2_holds", r.gr2_holds},
                 {"a_below_fx0", r.a_below_fx0},
                 {"x0_above_X0", r.x0_above_X0},
                 {"verdict", r.verdict == functionals::Verdict::GlobalByTheorem
                                 ? "GlobalByTheorem"
                                 : "NotCovered"}};
    return j.dump(2) + "\n";
}

std::string probe_json(const analysis::ProbeReport& r) {
    json scales = json::array();
    for (const auto& st : r.per_scale)
        scales.push_back(json{{"N", st.N},
                              {"max_ratio", st.max_ratio},
                              {"mean_ratio", st.mean_ratio}});
    const json j{{"exponents", json{{"s", r.s}, {"b", r.b}}},
                 {"per_scale", scales},
                 {"slope", r.slope},
                 {"trials", r.trials},
                 {"seed", r.seed},
                 {"nt", r.nt}};
    return j.dump(2) + "\n";
}

} // namespace gzk::report
