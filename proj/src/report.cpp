#include "alphatest/alpha_tests.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace alphatest {

namespace {

nlohmann::ordered_json report_fields(const TestReport& r) {
    nlohmann::ordered_json j;
    j["m_stat"] = r.m_stat;
    j["m_centered"] = r.m_centered;
    j["s_stat"] = r.s_stat;
    j["mu_hat"] = r.mu_hat;
    j["sigma_hat"] = r.sigma_hat;
    j["z"] = r.z;
    j["p_max"] = r.p_max;
    j["p_sum"] = r.p_sum;
    j["p_adp"] = r.p_adp;
    j["n_assets"] = r.n_assets;
    j["t_len"] = r.t_len;
    j["d"] = r.d;
    j["L"] = r.L;
    j["seed"] = r.seed;
    j["knots_p"] = r.knots_p;
    j["argmax_asset"] = r.argmax_asset;
    return j;
}

}  // namespace

std::string report_to_json(const TestReport& report) {
    return report_fields(report).dump(2) + "\n";
}

std::string report_to_csv(const TestReport& report) {
    const nlohmann::ordered_json j = report_fields(report);
    std::ostringstream header, row;
    row << std::setprecision(17);
    bool first = true;
    for (const auto& [key, value] : j.items()) {
        if (!first) {
            header << ",";
            row << ",";
        }
        first = false;
        header << key;
        if (value.is_number_float())
            row << value.get<double>();
        else
            row << value.dump();
    }
    return header.str() + "\n" + row.str() + "\n";
}

}  // namespace alphatest
