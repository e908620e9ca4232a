#include "cuspdet/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cuspdet/spectrum.hpp"
#include "cuspdet/zetadet.hpp"
#include "json.hpp"

namespace cuspdet::cli {

using nlohmann::json;

void RunConfig::validate() const
{
    spectrum::Geometry{a, alpha}.validate();
    zetadet::SpectralZetaParams p;
    p.g = {a, alpha};
    p.mu = mu;
    p.delta = delta;
    p.validate();
    if (parallelism < 1) throw DomainError("config: requires parallelism >= 1");
    if (format != "csv" && format != "json") throw DomainError("config: format must be csv or json");
    if (command == "eig" || command == "count")
        if (!(lambda_max > 1.0)) throw DomainError("config: requires lambda-max > 1");
    if (command == "zeta") {
        if (!(s > 1.0)) throw DomainError("zeta_eig: diverges unless s > 1");
        if (k_max < 0) throw DomainError("config: requires k-max >= 0");
        if (!(r_max > 0.0)) throw DomainError("config: requires r-max > 0");
    }
    if ((command == "asym" || command == "sweep") && mode != "a" && mode != "mu")
        throw DomainError("config: mode must be a or mu");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("config: grid must be increasing");
    if (command == "asym" || command == "sweep")
        for (double v : grid)
            if (mode == "a" ? !(v > 0.0) : !(v >= 0.0))
                throw DomainError(mode == "a" ? "geometry: requires a > 0" : "spectral zeta: requires mu >= 0");
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("config file: cannot open " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int n = 0;
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config file: line " + std::to_string(n) + " is not key = value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

namespace {

std::string csv_number(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string eig_output(const RunConfig& c)
{
    auto ev = spectrum::eigenvalues_up_to({c.a, c.alpha}, c.lambda_max, c.parallelism);
    if (c.format == "csv") return spectrum::eigenvalues_csv(ev);
    json j;
    j["schema_version"] = 1;
    j["a"] = c.a;
    j["alpha"] = c.alpha;
    j["lambda_max"] = c.lambda_max;
    j["eigenvalues"] = json::array();
    for (const auto& e : ev)
        j["eigenvalues"].push_back(
            {{"k", e.k}, {"j", e.j}, {"r", e.r}, {"lambda", e.lambda}, {"residual", e.residual}, {"certified", e.certified}});
    return j.dump(2) + "\n";
}

std::string count_output(const RunConfig& c)
{
    std::vector<double> lambdas = c.grid;
    if (lambdas.empty())
        for (int i = 1; i <= 20; ++i) lambdas.push_back(c.lambda_max * i / 20.0);
    for (double l : lambdas)
        if (!(l > 1.0)) throw DomainError("weyl_bound: requires lambda > 1");
    auto w = spectrum::weyl_check({c.a, c.alpha}, lambdas, c.delta, c.parallelism);
    if (c.format == "csv") {
        std::string s = "lambda,N_empirical,weyl_bound,pass\n";
        for (const auto& r : w)
            s += csv_number(r.lambda) + "," + std::to_string(r.N_empirical) + "," + csv_number(r.weyl_bound) + "," +
                 (r.pass ? "true" : "false") + "\n";
        return s;
    }
    json j;
    j["schema_version"] = 1;
    j["a"] = c.a;
    j["alpha"] = c.alpha;
    j["delta"] = c.delta;
    j["reports"] = json::array();
    for (const auto& r : w)
        j["reports"].push_back(
            {{"lambda", r.lambda}, {"N_empirical", r.N_empirical}, {"weyl_bound", r.weyl_bound}, {"pass", r.pass}});
    return j.dump(2) + "\n";
}

std::string zeta_output(const RunConfig& c)
{
    spectrum::Truncation tr;
    tr.k_max = c.k_max;
    tr.r_max = c.r_max;
    auto z = spectrum::zeta_eig({c.a, c.alpha}, c.mu, c.s, tr, c.parallelism);
    if (c.format == "csv") {
        std::string s = "k,explicit_sum,phase_tail,tail_error,zeros\n";
        for (const auto& m : z.modes)
            s += std::to_string(m.k) + "," + csv_number(m.explicit_sum) + "," + csv_number(m.phase_tail) + "," +
                 csv_number(m.tail_error) + "," + std::to_string(m.zeros) + "\n";
        return s;
    }
    json j;
    j["schema_version"] = 1;
    j["a"] = c.a;
    j["alpha"] = c.alpha;
    j["mu"] = c.mu;
    j["s"] = c.s;
    j["k_max"] = c.k_max;
    j["r_max"] = c.r_max;
    j["value"] = z.value;
    j["tail_bound"] = z.tail_bound;
    j["mode_tail_bound"] = z.mode_tail_bound;
    j["modes"] = json::array();
    for (const auto& m : z.modes)
        j["modes"].push_back({{"k", m.k},
                              {"explicit_sum", m.explicit_sum},
                              {"phase_tail", m.phase_tail},
                              {"tail_error", m.tail_error},
                              {"zeros", m.zeros}});
    return j.dump(2) + "\n";
}

zetadet::SpectralZetaParams params_of(const RunConfig& c)
{
    zetadet::SpectralZetaParams p;
    p.g = {c.a, c.alpha};
    p.mu = c.mu;
    p.delta = c.delta;
    return p;
}

zetadet::LogdetOptions logdet_options(const RunConfig& c)
{
    zetadet::LogdetOptions o;
    o.parallelism = c.parallelism;
    return o;
}

std::string det_csv(const zetadet::DeterminantReport& d)
{
    std::string s = "key,value\n";
    auto row = [&](const std::string& k, double v) { s += k + "," + csv_number(v) + "\n"; };
    row("schema_version", d.schema_version);
    row("a", d.a);
    row("alpha", d.alpha);
    row("mu", d.mu);
    row("delta", d.delta);
    row("logdet", d.logdet);
    row("numeric_remainder", d.numeric_remainder);
    row("est_error", d.est_error);
    for (const auto& [k, v] : d.family_contributions) row("family." + k, v);
    for (const auto& [k, v] : d.diagnostics) row("diagnostic." + k, v);
    return s;
}

std::string det_output(const RunConfig& c)
{
    auto d = zetadet::logdet(params_of(c), logdet_options(c));
    return c.format == "csv" ? det_csv(d) : d.to_json() + "\n";
}

std::vector<double> default_grid(const RunConfig& c)
{
    if (!c.grid.empty()) return c.grid;
    if (c.mode == "a") return c.quick ? std::vector<double>{5, 10} : std::vector<double>{5, 10, 20};
    return c.quick ? std::vector<double>{25, 100} : std::vector<double>{25, 100, 400};
}

std::string asym_output(const RunConfig& c)
{
    auto mode = c.mode == "a" ? zetadet::AsymptoticMode::A : zetadet::AsymptoticMode::Mu;
    auto rep = zetadet::residual_report({c.a, c.alpha}, mode, default_grid(c), c.delta, logdet_options(c));
    if (c.format == "csv") return rep.csv();
    json j;
    j["schema_version"] = 1;
    j["mode"] = c.mode;
    j["a"] = c.a;
    j["alpha"] = c.alpha;
    j["delta"] = c.delta;
    j["monotone_decay"] = rep.monotone_decay;
    j["final_within_threshold"] = rep.final_within_threshold;
    j["threshold"] = rep.threshold;
    j["rows"] = json::array();
    for (const auto& r : rep.rows)
        j["rows"].push_back({{"grid_value", r.grid_value},
                             {"logdet", r.logdet},
                             {"formula", r.formula},
                             {"residual", r.residual},
                             {"est_error", r.est_error}});
    return j.dump(2) + "\n";
}

std::string sweep_output(const RunConfig& c)
{
    std::vector<zetadet::DeterminantReport> reps;
    for (double v : default_grid(c)) {
        auto p = params_of(c);
        if (c.mode == "a")
            p.g.a = v;
        else
            p.mu = v;
        reps.push_back(zetadet::logdet(p, logdet_options(c)));
    }
    if (c.format == "csv") {
        std::string s = "a,alpha,mu,delta,logdet,est_error\n";
        for (const auto& d : reps)
            s += csv_number(d.a) + "," + csv_number(d.alpha) + "," + csv_number(d.mu) + "," + csv_number(d.delta) +
                 "," + csv_number(d.logdet) + "," + csv_number(d.est_error) + "\n";
        return s;
    }
    json j = json::array();
    for (const auto& d : reps) j.push_back(json::parse(d.to_json()));
    return j.dump(2) + "\n";
}

std::string verify_output(const RunConfig& c, bool& all_pass)
{
    VerifyOptions o;
    o.quick = c.quick;
    o.parallelism = c.parallelism;
    auto rows = verify_suite(c.selector.empty() ? "all" : c.selector, o);
    all_pass = true;
    for (const auto& r : rows) all_pass = all_pass && r.pass;
    return c.format == "csv" ? verify_csv(rows) : verify_json(rows) + "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"cusp spectrum and determinant tables", "cuspdet"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;
    app.add_option("command", c.command, "eig | count | zeta | det | asym | verify | sweep")
        ->required()
        ->check(CLI::IsMember({"eig", "count", "zeta", "det", "asym", "verify", "sweep"}));
    app.add_option("selector", c.selector, "verify target: specfun, hypergeom, ramanujan, spectrum, zetadet, all");
    app.add_option("--config", config_path, "file of key = value lines; flags override it");
    app.add_option("--a", c.a, "cusp length parameter a > 0");
    app.add_option("--alpha", c.alpha, "holonomy 0 <= alpha < 1");
    app.add_option("--mu", c.mu, "spectral shift mu >= 0");
    app.add_option("--delta", c.delta, "split exponent 0 < delta < 1/8, 1/(2 delta) not an integer");
    app.add_option("--lambda-max", c.lambda_max, "eigenvalue ceiling");
    app.add_option("--s", c.s, "zeta argument s > 1");
    app.add_option("--k-max", c.k_max, "modes |k| <= k-max");
    app.add_option("--r-max", c.r_max, "explicit zeros up to this ordinate");
    app.add_option("--mode", c.mode, "grid variable for asym and sweep: a | mu");
    app.add_option("--grid", c.grid, "comma separated increasing grid")->delimiter(',')->multi_option_policy(
        CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--output", c.output, "write here instead of stdout");
    app.add_option("--format", c.format, "csv | json");
    app.add_option("--parallelism", c.parallelism, "worker threads");
    app.add_flag("--quick", c.quick, "reduced verification grids");

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        // a first pass finds --config, whose entries are then placed before the explicit flags
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
        }
        std::vector<std::string> merged;
        if (!config_path.empty())
            for (const auto& [k, v] : read_config_file(config_path)) {
                if (k == "config") throw DomainError("config file: nested config is not allowed");
                bool explicit_flag = false;
                for (const auto& a : args)
                    if (a == "--" + k || a.rfind("--" + k + "=", 0) == 0) explicit_flag = true;
                if (explicit_flag) continue;
                if (k == "quick") {
                    if (v == "true" || v == "1") merged.push_back("--quick");
                    continue;
                }
                merged.push_back("--" + k);
                merged.push_back(v);
            }
        merged.insert(merged.end(), args.begin(), args.end());
        std::vector<std::string> rev(merged.rbegin(), merged.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        c.validate();
        if (c.command != "verify" && !c.selector.empty())
            throw DomainError("unexpected argument '" + c.selector + "' for command " + c.command);
        std::string text;
        bool pass = true;
        if (c.command == "eig") text = eig_output(c);
        else if (c.command == "count") text = count_output(c);
        else if (c.command == "zeta") text = zeta_output(c);
        else if (c.command == "det") text = det_output(c);
        else if (c.command == "asym") text = asym_output(c);
        else if (c.command == "sweep") text = sweep_output(c);
        else text = verify_output(c, pass);
        if (c.output.empty()) {
            out << text;
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw DomainError("cannot write " + c.output);
            f << text;
        }
        return pass ? 0 : 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cuspdet::cli
