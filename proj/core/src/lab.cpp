#include "wpvol/lab.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "wpvol/cheeger_geometry.hpp"
#include "wpvol/interval.hpp"
#include "wpvol/topology.hpp"
#include "wpvol/volumes.hpp"

namespace wpvol {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_int(std::string_view key, std::string_view v) {
    T out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(v) + "'");
    return out;
}

std::string dbl(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string sig_str(int g, int n) { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

/// Runs f(0..count-1) on `threads` workers; results come back in index order.
/// The exception of the lowest failing index is rethrown.
template <class R>
std::vector<R> parallel_map(std::size_t count, unsigned threads, const std::function<R(std::size_t)>& f) {
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned k = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (k == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Stable signatures in the configured window. Unless both upper bounds are
/// explicit, points whose dimension plus `shift` exceeds the budget are dropped;
/// explicit windows are left for the engine to reject.
std::vector<Signature> grid(const LabConfig& c, int shift, int min_g = 0, int min_n = 0) {
    const bool explicit_window = c.gmax && c.nmax;
    const int g0 = std::max(c.gmin.value_or(0), min_g);
    const int g1 = c.gmax.value_or(c.budget / 3 + 2);
    const int n0 = std::max(c.nmin.value_or(0), min_n);
    const int n1 = c.nmax.value_or(c.budget + 3);
    std::vector<Signature> out;
    for (int g = g0; g <= g1; ++g)
        for (int n = n0; n <= n1; ++n) {
            const Signature s{g, n};
            if (!s.stable()) continue;
            if (!explicit_window && s.dim() + shift > c.budget) continue;
            out.push_back(s);
        }
    return out;
}

/// floor(a sqrt(g)) computed exactly.
int scaled_root(const Rat& a, int g) {
    const Rat target = a * a * Rat(g);
    int n = static_cast<int>(std::floor(std::sqrt(target.to_double())));
    while (Rat(n + 1) * Rat(n + 1) <= target) ++n;
    while (n > 0 && Rat(n) * Rat(n) > target) --n;
    return n;
}

/// Genera g >= 1 paired with n = floor(a sqrt g), restricted to the window and budget.
std::vector<Signature> sqrt_grid(const LabConfig& c, int min_n) {
    std::vector<Signature> out;
    const int g0 = std::max(c.gmin.value_or(1), 1);
    const int g1 = c.gmax.value_or(c.budget / 3 + 1);
    for (int g = g0; g <= g1; ++g) {
        const Signature s{g, scaled_root(c.a, g)};
        if (s.n < min_n) continue;
        if (!c.gmax && s.dim() > c.budget) continue;
        out.push_back(s);
    }
    return out;
}

std::string num(const PiPoly& x, int digits) { return eval_numeric(x, digits).mid_str(digits); }

ExperimentRow make_row(std::string experiment, std::string input, std::string exact, std::string numeric,
                       std::string reference = {}, std::string deviation = {}, std::string aux = {}) {
    ExperimentRow r;
    r.experiment = std::move(experiment);
    r.input = std::move(input);
    r.exact = std::move(exact);
    r.numeric = std::move(numeric);
    r.reference = std::move(reference);
    r.deviation = std::move(deviation);
    r.aux = std::move(aux);
    return r;
}

ExperimentTable volume_table(const LabConfig& c, BracketEngine& e) {
    const auto sigs = grid(c, 0);
    ExperimentTable t{"volume-table", {}, {}};
    auto rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const PiScalar v = volume(e, g, n);
        ExperimentRow r = make_row(t.experiment, sig_str(g, n), v.str(), num(v, c.digits));
        return r;
    });
    t.rows = std::move(rows);
    return t;
}

ExperimentTable mz_table(const LabConfig& c, BracketEngine& e) {
    const auto sigs = grid(c, 1);
    ExperimentTable t{"mz-ratio", {}, {}};
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const PiScalar r = mz_ratio(e, g, n);
        // 4 pi^2 r is rational.
        const Rat scaled = (PiScalar(Rat(4), 2) * r).coeff();
        const double dev = std::abs(scaled.to_double() - 1.0);
        ExperimentRow row = make_row(t.experiment, sig_str(g, n), r.str(), num(scaled, c.digits), "1", dbl(dev));
        const int chi = 2 * g - 2 + n;
        row.aux = n > 0 ? dbl(dev / (4 * kPi * kPi) * chi / n) : "-";
        return row;
    });
    double c2 = 0;
    for (const auto& r : t.rows)
        if (r.aux != "-") c2 = std::max(c2, std::stod(r.aux));
    t.summary.emplace_back("fitted_c2", dbl(c2));
    return t;
}

ExperimentTable ratio_r_table(const LabConfig& c, BracketEngine& e) {
    std::vector<Signature> sigs;
    for (const auto s : grid(c, 1, 0, 1))
        if (Signature{s.g, s.n - 1}.stable()) sigs.push_back(s);
    ExperimentTable t{"ratio-R", {}, {}};
    const double lo = 0.5 - kPi * kPi / 20.0;
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const Rat r = ratio_R(e, g, n);
        const double v = r.to_double();
        ExperimentRow row = make_row(t.experiment, sig_str(g, n), r.str(), num(r, c.digits), "[" + dbl(lo) + ",1]");
        row.deviation = dbl(v < lo ? lo - v : (v > 1 ? v - 1 : 0.0));
        row.status = (v >= lo && v <= 1) ? "PASS" : "FAIL";
        return row;
    });
    return t;
}

ExperimentTable identity_table(const LabConfig& c, BracketEngine& e) {
    const auto sigs = grid(c, 1);
    ExperimentTable t{"identity", {}, {}};
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const IdentityCheck chk = identity_check(e, g, n);
        ExperimentRow row = make_row(t.experiment, sig_str(g, n), chk.residual.str(), num(chk.lhs, c.digits),
                          num(chk.rhs, c.digits), "0");
        if (!chk.holds()) row.deviation = num(chk.residual, c.digits);
        row.status = chk.holds() ? "PASS" : "FAIL";
        return row;
    });
    return t;
}

CutoffLength poisson_cutoff(const LabConfig& c) {
    return c.L ? *c.L : CutoffLength::times_pi(Rat(2) * c.C);
}

ExperimentTable poisson_table(const LabConfig& c, BracketEngine& e) {
    struct Item { Signature s; int r; };
    std::vector<Item> items;
    for (const auto s : sqrt_grid(c, 2))
        for (int r = 1; r <= 3; ++r)
            if (s.n >= 2 * r && Signature{s.g, s.n - r}.stable()) items.push_back({s, r});
    const CutoffLength L = poisson_cutoff(c);
    const Flagged lambda = poisson_lambda(c.a.to_double(), c.C.to_double());
    ExperimentTable t{"poisson-moments", {}, {}};
    t.rows = parallel_map<ExperimentRow>(items.size(), c.threads, [&](std::size_t i) {
        const auto [s, r] = items[i];
        const ExpectationResult res = factorial_moment(e, s.g, s.n, r, L, c.digits);
        ExperimentRow row = make_row(t.experiment,
                          "(" + std::to_string(s.g) + "," + std::to_string(s.n) + "," + std::to_string(r) +
                              ",L=" + L.str() + ")",
                          res.exact->str(), res.numeric.mid_str(c.digits), dbl(res.main_term),
                          dbl(res.rel_deviation), dbl(std::pow(lambda.value, r)));
        row.warnings = res.warnings;
        row.warnings.insert(row.warnings.end(), lambda.warnings.begin(), lambda.warnings.end());
        return row;
    });
    t.summary.emplace_back("lambda", dbl(lambda.value));
    return t;
}

ExperimentTable second_moment_table(const LabConfig& c, BracketEngine& e) {
    const auto sigs = sqrt_grid(c, 4);
    ExperimentTable t{"second-moment", {}, {}};
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const CutoffLength L = c.L ? *c.L : length_scale(g, n);
        const SecondMoment sm = second_moment_bound(e, g, n, L, c.digits);
        const double target = sm.target.to_double();
        ExperimentRow row = make_row(t.experiment,
                          "(" + std::to_string(g) + "," + std::to_string(n) + ",L=" + L.str() + ")",
                          sm.square.str(), dbl(sm.bound), dbl(target), dbl(std::abs(sm.bound - target)),
                          num(sm.mean, c.digits));
        const bool ok = sm.square == sm.mean + sm.falling2 && sm.bound >= 0 && sm.bound <= 1;
        row.status = ok ? "PASS" : "FAIL";
        row.warnings = sm.warnings;
        return row;
    });
    return t;
}

ExperimentTable cheeger_table(const LabConfig& c, BracketEngine& e) {
    std::vector<Signature> sigs;
    for (const auto s : grid(c, 0))
        if (s.euler() >= 2) sigs.push_back(s);
    ExperimentTable t{"cheeger-upper", {}, {}};
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const Flagged f = cheeger_prob_upper(e, g, n, c.C);
        ExperimentRow row = make_row(t.experiment, sig_str(g, n) + ",C=" + c.C.str(), "-", dbl(f.value));
        row.status = std::isfinite(f.value) && f.value >= 0 ? "PASS" : "FAIL";
        row.warnings = f.warnings;
        return row;
    });
    return t;
}

ExperimentTable pvol2_table(const LabConfig& c, BracketEngine& e) {
    std::vector<Signature> sigs;
    for (const auto s : grid(c, 0))
        if (s.euler() >= 4) sigs.push_back(s);
    ExperimentTable t{"pvol2", {}, {}};
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const double v = pvol2_sum(e, g, n, c.u);
        ExperimentRow row = make_row(t.experiment, sig_str(g, n) + ",u=" + c.u.str(), "-", dbl(v));
        row.aux = dbl(v * std::sqrt(static_cast<double>(g)));
        row.status = std::isfinite(v) && v >= 0 ? "PASS" : "FAIL";
        return row;
    });
    double worst = 0;
    for (const auto& r : t.rows) worst = std::max(worst, std::stod(r.aux));
    t.summary.emplace_back("max_sqrt_g_scaled", dbl(worst));
    return t;
}

ExperimentTable two_curve_table(const LabConfig& c, BracketEngine& e) {
    std::vector<Signature> sigs;
    for (const auto s : grid(c, 0, 1))
        if (Signature{s.g - 1, s.n + 1}.stable() && Signature{s.g - 1, s.n + 1}.dim() <= c.budget) sigs.push_back(s);
    ExperimentTable t{"two-curve", {}, {}};
    const double T = 2 * kPi * c.C.to_double();
    t.rows = parallel_map<ExperimentRow>(sigs.size(), c.threads, [&](std::size_t i) {
        const auto [g, n] = sigs[i];
        const TwoCurveBound b = two_curve_expectation_bound(e, g, n, c.C);
        const double ratio = to_double(volume(e, g - 1, n + 1) / volume(e, g, n));
        const double leading = ratio * std::pow(T, 4) / 24.0;
        ExperimentRow row = make_row(t.experiment, sig_str(g, n) + ",C=" + c.C.str(), b.exact.str(), dbl(b.value),
                          dbl(leading), dbl(std::abs(b.value / leading - 1.0)), dbl(b.scaled));
        // Sandwich: V(x, y, 0..) <= e^{(x+y)/2} V, so the integral is at most e^{T/2} T^4 / 24 times the ratio.
        row.status = b.value <= leading * std::exp(T / 2) ? "PASS" : "FAIL";
        return row;
    });
    return t;
}

ExperimentTable geometry_table(const LabConfig& c) {
    ExperimentTable t{"geometry-constants", {}, {}};
    const RegimeConstants rc = regime_constants();
    const double doubles[] = {rc.poisson_bound, rc.spectral_bound, rc.cheeger_bound, rc.cheeger_h_bound};
    const auto rendered = rc.rendered();
    for (std::size_t i = 0; i < rendered.size(); ++i)
        t.rows.push_back(make_row(t.experiment, rendered[i].first, rendered[i].second, dbl(doubles[i])));

    auto check = [&](std::string input, double value, double reference, double tol) {
        const double dev = std::abs(value - reference);
        ExperimentRow row = make_row(t.experiment, std::move(input), "-", dbl(value), dbl(reference), dbl(dev), dbl(tol));
        row.status = dev <= tol ? "PASS" : "FAIL";
        t.rows.push_back(std::move(row));
    };
    check("eps_threshold(0)", RegimeConstants::eps_threshold(0), rc.cheeger_h_bound, 1e-15);
    check("collar_halfwidth(2arcsinh1)", collar_halfwidth(2 * std::asinh(1.0)), std::asinh(1.0), 1e-12);
    for (double H : {0.05, 0.11, 0.5, 1.0, 2.0}) {
        double best = phi(H, 0);
        for (int j = 1; j <= 50000; ++j) best = std::min(best, phi(H, j * 1e-4));
        check("phi_grid_min(H=" + dbl(H) + ")", best, phi_min(H), 1e-6);
    }
    for (int n : {100, 400, 1600}) {
        check("sphere_h_upper(" + std::to_string(4 * n) + ")/sphere_h_upper(" + std::to_string(n) + ")",
              sphere_h_upper(4 * n) / sphere_h_upper(n), 0.5, 0.01);
    }
    (void)c;
    return t;
}

ExperimentTable lratio_table(const LabConfig& c, BracketEngine& e) {
    struct Item { Signature s; int m; SplitPair split; };
    std::vector<Item> items;
    for (const auto s : grid(c, 0))
        if (s.euler() >= 2)
            for (int m = 1; m <= s.euler() / 2; ++m)
                for (const auto& sp : enumerate_splits(m, s.g, s.n)) items.push_back({s, m, sp});
    ExperimentTable t{"lratio", {}, {}};
    t.rows = parallel_map<ExperimentRow>(items.size(), c.threads, [&](std::size_t i) {
        const auto& [s, m, sp] = items[i];
        const auto [lhs, rhs] = lratio_check(e, m, sp, s.g, s.n);
        ExperimentRow row = make_row(t.experiment, sig_str(s.g, s.n) + ",m=" + std::to_string(m) + "," + sp.str(s.n), "-",
                          dbl(lhs), dbl(rhs), "-", dbl(lhs / rhs));
        return row;
    });
    double worst = 0;
    for (const auto& r : t.rows) worst = std::max(worst, std::stod(r.aux));
    t.summary.emplace_back("max_lhs_over_rhs", dbl(worst));
    return t;
}

}  // namespace

void LabConfig::validate() const {
    if (budget < 0) throw std::invalid_argument("budget must be >= 0");
    if (digits < 15) throw std::invalid_argument("digits must be >= 15");
    if (threads == 0) throw std::invalid_argument("threads must be >= 1");
    if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
    if (a.sign() <= 0) throw std::invalid_argument("a must be positive");
    if (C.sign() <= 0) throw std::invalid_argument("C must be positive");
    if (u.sign() <= 0) throw std::invalid_argument("u must be positive");
}

void LabConfig::set(std::string_view key, std::string_view raw) {
    const std::string v = trim(raw);
    if (key == "budget") budget = parse_int<int>(key, v);
    else if (key == "digits") digits = parse_int<int>(key, v);
    else if (key == "cache_dir" || key == "cache-dir") cache_dir = v;
    else if (key == "threads") threads = parse_int<unsigned>(key, v);
    else if (key == "seed") seed = parse_int<std::uint64_t>(key, v);
    else if (key == "gmin") gmin = parse_int<int>(key, v);
    else if (key == "gmax") gmax = parse_int<int>(key, v);
    else if (key == "nmin") nmin = parse_int<int>(key, v);
    else if (key == "nmax") nmax = parse_int<int>(key, v);
    else if (key == "a") a = Rat::parse(v);
    else if (key == "C") C = Rat::parse(v);
    else if (key == "u") u = Rat::parse(v);
    else if (key == "L") L = CutoffLength::parse(v);
    else if (key == "format") format = v;
    else if (key == "out") out = std::filesystem::path(v);
    else throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
}

LabConfig resolve_config(const std::map<std::string, std::string>& flags,
                         const std::optional<std::filesystem::path>& config_file, const char* env_cache_dir) {
    LabConfig c;
    if (env_cache_dir && *env_cache_dir) c.cache_dir = env_cache_dir;
    if (config_file) {
        std::ifstream in(*config_file);
        if (!in) throw std::runtime_error("cannot read config file " + config_file->string());
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string s = trim(line.substr(0, line.find('#')));
            if (s.empty()) continue;
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
            try {
                c.set(trim(s.substr(0, eq)), s.substr(eq + 1));
            } catch (const std::invalid_argument& err) {
                throw ParseError(lineno, err.what());
            }
        }
    }
    for (const auto& [k, v] : flags) c.set(k, v);
    c.validate();
    return c;
}

bool ExperimentTable::all_pass() const {
    return std::none_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.status == "FAIL"; });
}

std::string ExperimentTable::csv() const {
    std::ostringstream os;
    os << "experiment,input,exact,numeric,reference,deviation,aux,status,warnings\n";
    for (const auto& r : rows) {
        for (const std::string* f : {&r.experiment, &r.input, &r.exact, &r.numeric, &r.reference, &r.deviation,
                                     &r.aux, &r.status})
            os << csv_field(f->empty() ? "-" : *f) << ',';
        os << csv_field(join(r.warnings, "; ")) << '\n';
    }
    for (const auto& [k, v] : summary) os << "# " << k << ": " << v << '\n';
    return os.str();
}

std::string ExperimentTable::json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"input", r.input},
                             {"exact", r.exact.empty() ? "-" : r.exact},
                             {"numeric", r.numeric.empty() ? "-" : r.numeric},
                             {"reference", r.reference.empty() ? "-" : r.reference},
                             {"deviation", r.deviation.empty() ? "-" : r.deviation},
                             {"aux", r.aux.empty() ? "-" : r.aux},
                             {"status", r.status},
                             {"warnings", r.warnings}});
    }
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) s[k] = v;
    j["summary"] = s;
    return j.dump(2) + "\n";
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "volume-table", "mz-ratio",  "ratio-R", "identity", "poisson-moments", "second-moment",
        "cheeger-upper", "pvol2",    "two-curve", "geometry-constants", "lratio", "cache-warm"};
    return names;
}

std::string experiment_help() {
    return R"(Columns: experiment,input,exact,numeric,reference,deviation,aux,status,warnings
  volume-table        input (g,n); exact V_{g,n}; numeric its value
  mz-ratio            input (g,n); exact (2g-2+n)V_{g,n}/V_{g,n+1}; numeric 4pi^2 times it;
                      reference 1; aux |ratio - 1/(4pi^2)| (2g-2+n)/n (lower bound for c2)
  ratio-R             input (g,n); exact V_{g,n}^2/(V_{g,n-1}V_{g,n+1}); reference [1/2-pi^2/20, 1]
  identity            input (g,n); exact the residual (must be 0); numeric lhs; reference rhs
  poisson-moments     input (g,n,r,L) with n = floor(a sqrt g); exact E[(N)_r]; reference main term;
                      deviation relative; aux lambda(a,C)^r
  second-moment       input (g,n,L) with n = floor(a sqrt g); exact E[N^2]; numeric E[N]^2/E[N^2];
                      reference V_{g,n-1}^2/(V_{g,n}V_{g,n-2}); aux E[N]
  cheeger-upper       input (g,n),C; numeric the upper-bound sum for Prob(H <= C)
  pvol2               input (g,n),u; numeric the m >= 2 sum; aux numeric * sqrt(g)
  two-curve           input (g,n),C; exact the expectation bound; reference leading term; aux numeric*(g+n)
  geometry-constants  named constants to 30 digits, then identity checks with tolerance in aux
  lratio              input (g,n),m,(g1,n1|g2,n2|k); numeric V1V2/V; reference m^m(chi-m)^(chi-m)/chi^chi
  cache-warm          input budget; numeric entries; aux new entries; reference wall seconds
CSV files end with '# key: value' summary lines.)";
}

std::filesystem::path cache_file(const std::filesystem::path& dir) { return dir / "brackets.wpb"; }

WarmStats cache_warm(const LabConfig& config, BracketEngine& engine) {
    WarmStats st;
    if (!config.cache_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(config.cache_dir, ec);
        st.file = cache_file(config.cache_dir);
        if (std::filesystem::exists(st.file)) engine.cache().load(st.file);
    }
    const std::size_t before = engine.cache().size();
    const auto t0 = std::chrono::steady_clock::now();
    engine.warm(config.budget, config.threads);
    st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    st.entries = engine.cache().size();
    st.new_entries = st.entries - before;
    if (!st.file.empty()) {
        try {
            engine.cache().save(st.file);
        } catch (const std::exception& err) {
            throw std::runtime_error("cache directory " + config.cache_dir.string() + " is not writable: " +
                                     err.what());
        }
    }
    return st;
}

ExperimentTable run_experiment(std::string_view name, const LabConfig& config) {
    BracketEngine engine(config.budget);
    if (name != "cache-warm" && !config.cache_dir.empty()) {
        const auto file = cache_file(config.cache_dir);
        if (std::filesystem::exists(file)) engine.cache().load(file);
    }
    return run_experiment(name, config, engine);
}

ExperimentTable run_experiment(std::string_view name, const LabConfig& config, BracketEngine& engine) {
    config.validate();
    if (name == "volume-table") return volume_table(config, engine);
    if (name == "mz-ratio") return mz_table(config, engine);
    if (name == "ratio-R") return ratio_r_table(config, engine);
    if (name == "identity") return identity_table(config, engine);
    if (name == "poisson-moments") return poisson_table(config, engine);
    if (name == "second-moment") return second_moment_table(config, engine);
    if (name == "cheeger-upper") return cheeger_table(config, engine);
    if (name == "pvol2") return pvol2_table(config, engine);
    if (name == "two-curve") return two_curve_table(config, engine);
    if (name == "geometry-constants") return geometry_table(config);
    if (name == "lratio") return lratio_table(config, engine);
    if (name == "cache-warm") {
        const WarmStats st = cache_warm(config, engine);
        ExperimentTable t{"cache-warm", {}, {}};
        ExperimentRow row = make_row(t.experiment, "budget=" + std::to_string(config.budget), "-", std::to_string(st.entries),
                          dbl(st.wall_seconds), "-", std::to_string(st.new_entries));
        t.rows.push_back(std::move(row));
        if (!st.file.empty()) t.summary.emplace_back("cache_file", st.file.string());
        return t;
    }
    throw UnknownExperiment("unknown experiment '" + std::string(name) + "'; valid: " +
                            join(experiment_names(), ", "));
}

}  // namespace wpvol
