#include <cmath>
#include <iomanip>
#include <sstream>

#include "cuspdet/specfun.hpp"
#include "cuspdet/zetadet.hpp"
#include "json.hpp"

namespace cuspdet::zetadet {

std::string DeterminantReport::to_json() const
{
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["a"] = a;
    j["alpha"] = alpha;
    j["mu"] = mu;
    j["delta"] = delta;
    j["logdet"] = logdet;
    j["family_contributions"] = family_contributions;
    j["numeric_remainder"] = numeric_remainder;
    j["est_error"] = est_error;
    j["diagnostics"] = diagnostics;
    return j.dump(2);
}

DeterminantReport DeterminantReport::from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    DeterminantReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != 1) throw DomainError("DeterminantReport: unsupported schema_version");
    r.a = j.at("a").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.mu = j.at("mu").get<double>();
    r.delta = j.at("delta").get<double>();
    r.logdet = j.at("logdet").get<double>();
    r.family_contributions = j.at("family_contributions").get<std::map<std::string, double>>();
    r.numeric_remainder = j.at("numeric_remainder").get<double>();
    r.est_error = j.at("est_error").get<double>();
    r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    return r;
}

double asymptotic_formula(const spectrum::Geometry& g, AsymptoticMode mode, double value)
{
    g.validate();
    const double a = (mode == AsymptoticMode::A) ? value : g.a;
    const double al = g.alpha;
    if (mode == AsymptoticMode::A) {
        if (al == 0.0) return kPi / 3.0 * a + 0.5 * std::log(a);
        return 2.0 * kPi * al * al * a - 2.0 * kPi * al * a + kPi / 3.0 * a -
               0.5 * std::log(specfun::sinpi(al) / (kPi * al)) - 0.5 * std::log(2.0 * kPi * al);
    }
    const double mu = value;
    if (!(mu > 0.0)) throw DomainError("asymptotic_formula: mu-mode requires mu > 0");
    double lm = std::log(mu), sm = std::sqrt(mu);
    double lead = -mu * lm / (4.0 * kPi * a) + mu / (4.0 * kPi * a);
    if (al == 0.0) {
        double c = 4.0 * specfun::bose_arctan_integral(1.0) - std::log(2.0) + 1.0 + 1.0 / (4.0 * a) +
                   std::log(2.0 * kPi * a);
        return lead + 0.5 * sm * lm - c * sm - 0.5 * lm;
    }
    double c = 2.0 * (specfun::bose_arctan_integral(1.0 + al) + specfun::bose_arctan_integral(1.0 - al)) -
               std::log(2.0) + al * std::log((1.0 + al) / (1.0 - al)) + 1.0 / (4.0 * a) +
               0.5 * std::log(4.0 * kPi * kPi * (1.0 - al * al) * a * a) + std::log(kPi * al * a);
    return lead + sm * lm - c * sm - 0.75 * lm;
}

std::string ResidualReport::csv() const
{
    std::ostringstream os;
    os << "grid_value,logdet,formula,residual,est_error\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << r.grid_value << ',' << r.logdet << ',' << r.formula << ',' << r.residual << ',' << r.est_error << '\n';
    return os.str();
}

ResidualReport ResidualReport::from_csv(const std::string& text)
{
    ResidualReport rep;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "grid_value,logdet,formula,residual,est_error")
        throw DomainError("residual table: bad header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 5) throw DomainError("residual table: expected 5 columns");
        rep.rows.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    return rep;
}

ResidualReport residual_report(const spectrum::Geometry& g, AsymptoticMode mode, const std::vector<double>& grid,
                               double delta, const LogdetOptions& opt)
{
    g.validate();
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("residual_report: grid must be increasing");
    ResidualReport rep;
    for (double v : grid) {
        SpectralZetaParams p;
        p.g = g;
        p.delta = delta;
        if (mode == AsymptoticMode::A) {
            p.g.a = v;
            p.mu = 0.0;
        } else {
            p.mu = v;
        }
        auto d = logdet(p, opt);
        ResidualRow r;
        r.grid_value = v;
        r.logdet = d.logdet;
        r.formula = asymptotic_formula(g, mode, v);
        r.residual = r.logdet - r.formula;
        r.est_error = d.est_error;
        rep.rows.push_back(r);
    }
    rep.monotone_decay = !rep.rows.empty();
    for (size_t i = 1; i < rep.rows.size(); ++i)
        if (!(std::fabs(rep.rows[i].residual) < std::fabs(rep.rows[i - 1].residual))) rep.monotone_decay = false;
    if (!rep.rows.empty()) {
        const auto& last = rep.rows.back();
        rep.threshold = std::max(1e-2, 3.0 * last.est_error);
        rep.final_within_threshold = std::fabs(last.residual) <= rep.threshold;
    }
    return rep;
}

}  // namespace cuspdet::zetadet
