// zetabound: evaluate zeta'(1/2+it), the explicit bounds, the lemma sweeps,
// the parameter search and oracle sweeps from the command line.
//
// Exit status: 0 success, 1 usage, 2 verification violation,
// 3 numerical non-convergence. Failures print one line to stderr:
//   zetabound: error code=<n> kind=<kind> message="<text>"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetabound/zetabound.hpp"

namespace zb = zetabound;
using json = nlohmann::json;

namespace {

constexpr int schema_version = 1;

enum Exit { ok = 0, usage = 1, violation = 2, nonconvergence = 3 };

struct Failure {
    int code;
    std::string kind;
    std::string message;
};

std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// A column value: number or text.
struct Cell {
    std::variant<double, std::string, long long, bool> v;
    Cell(double d) : v(d) {}
    Cell(int i) : v(static_cast<long long>(i)) {}
    Cell(long long i) : v(i) {}
    Cell(std::size_t i) : v(static_cast<long long>(i)) {}
    Cell(bool b) : v(b) {}
    Cell(std::string s) : v(std::move(s)) {}
    Cell(const char* s) : v(std::string(s)) {}

    [[nodiscard]] std::string csv() const
    {
        if (auto d = std::get_if<double>(&v))
            return num(*d);
        if (auto i = std::get_if<long long>(&v))
            return std::to_string(*i);
        if (auto b = std::get_if<bool>(&v))
            return *b ? "1" : "0";
        std::string s = std::get<std::string>(v);
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }

    [[nodiscard]] json to_json() const
    {
        if (auto d = std::get_if<double>(&v))
            return std::isfinite(*d) ? json(*d) : json(nullptr);
        if (auto i = std::get_if<long long>(&v))
            return *i;
        if (auto b = std::get_if<bool>(&v))
            return *b;
        return std::get<std::string>(v);
    }
};

struct Table {
    std::string command;
    std::string description;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void write(std::ostream& os, const std::string& format) const
    {
        if (format == "csv") {
            os << "# zetabound " << command << " schema_version=" << schema_version << " columns: ";
            for (std::size_t i = 0; i < columns.size(); ++i)
                os << (i ? "," : "") << columns[i];
            os << " | " << description << '\n';
            for (std::size_t i = 0; i < columns.size(); ++i)
                os << (i ? "," : "") << columns[i];
            os << '\n';
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << (i ? "," : "") << row[i].csv();
                os << '\n';
            }
            return;
        }
        for (const auto& row : rows) {
            json rec = json::object();
            rec["schema_version"] = schema_version;
            rec["command"] = command;
            for (std::size_t i = 0; i < columns.size(); ++i)
                rec[columns[i]] = row[i].to_json();
            // doubles are dumped in shortest round-trip form
            os << rec.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
        }
    }
};

struct Options {
    std::string command;
    std::optional<double> t, t_min, t_max;
    std::size_t samples = 0;
    bool samples_set = false;
    std::optional<int> theorem;
    zb::BoundParams params;
    std::string lemma = "all";
    std::uint64_t seed = 1;
    std::size_t budget = 4000;
    std::string out;
    std::string format = "csv";
    std::int64_t max_m = 10000;
    std::string objective = "bound";
    std::string weights;
    bool crossover = false;
};

std::vector<double> t_values(const Options& o, double floor_t, const std::string& why)
{
    std::vector<double> ts;
    if (o.t) {
        if (o.t_min || o.t_max)
            throw Failure{usage, "usage", "--t cannot be combined with --t-min/--t-max"};
        ts = {*o.t};
    } else if (o.t_min && o.t_max) {
        if (!(*o.t_min > 0) || *o.t_max < *o.t_min)
            throw Failure{usage, "usage", "require 0 < t-min <= t-max"};
        const std::size_t n = o.samples_set ? o.samples : 10;
        if (n == 0)
            throw Failure{usage, "usage", "--samples must be >= 1"};
        ts = zb::geometric_grid(*o.t_min, *o.t_max, n);
    } else {
        throw Failure{usage, "usage", "give --t or both --t-min and --t-max"};
    }
    for (double t : ts) {
        if (!std::isfinite(t))
            throw Failure{usage, "usage", "t must be finite"};
        if (zb::detail::below(t, floor_t))
            throw Failure{usage, "usage", "t=" + num(t) + " below " + why};
    }
    return ts;
}

int run_eval(const Options& o, Table& tab)
{
    double floor_t = 1e-300;
    std::string why = "0 (t must be positive)";
    if (o.theorem == 1) {
        floor_t = zb::e2;
        why = "e^2 required by theorem 1";
    } else if (o.theorem == 2) {
        floor_t = zb::e6;
        why = "e^6 required by theorem 2";
    }
    const auto ts = t_values(o, floor_t, why);
    for (double t : ts)
        if (t > 1e5)
            throw Failure{usage, "usage", "eval supports t <= 1e5"};
    tab.description = "zeta'(1/2+it) by Euler-Maclaurin; error_bound is absolute; converged=0 if above tol 1e-9";
    tab.columns = {"t", "re_zeta_prime", "im_zeta_prime", "abs_zeta_prime", "error_bound", "N", "v", "converged"};
    bool all_converged = true;
    for (double t : ts) {
        const zb::EvalPoint p{t};
        const zb::EMConfig cfg = zb::default_em_config(p, 1e-9, true);
        const auto z = zb::zeta_prime_em(p, cfg);
        all_converged = all_converged && z.converged;
        tab.rows.push_back({t, z.value.real(), z.value.imag(), std::abs(z.value), z.error_bound,
                            static_cast<long long>(cfg.N), cfg.v, z.converged});
    }
    return all_converged ? ok : nonconvergence;
}

int run_bound(const Options& o, Table& tab)
{
    const double floor_t = o.theorem == 2 ? zb::e6 : zb::e2;
    const auto ts = t_values(o, floor_t, o.theorem == 2 ? "e^6 required by theorem 2" : "e^2 required by theorem 1");
    if (auto v = o.params.violation())
        throw Failure{usage, "usage", "invalid parameters: " + *v};
    const zb::BoundCoefficients c = zb::theorem2_coeffs(o.params);
    tab.description = "explicit bounds for |zeta'(1/2+it)|; theorem2 columns are nan for t < e^6 or when --theorem 1";
    tab.columns = {"t",
                   "theorem1_total",
                   "theorem1_head",
                   "theorem1_mid_tail",
                   "theorem1_remainder_E",
                   "theorem2_total",
                   "theorem2_head",
                   "theorem2_block_13",
                   "theorem2_block_23",
                   "theorem2_mid_tail",
                   "theorem2_remainder_E",
                   "theorem2_absorption_slack",
                   "Q1",
                   "Q2",
                   "Q3",
                   "Q4",
                   "Q5",
                   "Q6"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double t : ts) {
        std::vector<Cell> row{t};
        if (o.theorem != 2) {
            const auto b = zb::theorem1_bound(t);
            row.insert(row.end(), {b.total, b.part("head"), b.part("mid_tail"), b.part("remainder_E")});
        } else {
            row.insert(row.end(), {nan, nan, nan, nan});
        }
        if (o.theorem != 1 && !zb::detail::below(t, zb::e6)) {
            const auto b = zb::theorem2_bound(t, o.params, c);
            row.insert(row.end(), {b.total, b.part("head"), b.part("block_13"), b.part("block_23"), b.part("mid_tail"),
                                   b.part("remainder_E"), b.part("absorption_slack")});
        } else {
            row.insert(row.end(), {nan, nan, nan, nan, nan, nan, nan});
        }
        for (double q : c.Q)
            row.emplace_back(q);
        tab.rows.push_back(std::move(row));
    }
    return ok;
}

int run_verify(const Options& o, Table& tab)
{
    tab.description = "one record per lemma; violations count oracle > bound + error budget";
    tab.columns = {"lemma_id", "samples", "violations", "excluded", "min_slack", "min_slack_inputs",
                   "max_oracle", "error_budget_used", "notes"};
    std::vector<zb::VerificationReport> reports;
    if (o.theorem) {
        if (o.lemma != "all")
            throw Failure{usage, "usage", "--theorem and --lemma are exclusive for verify"};
        const double lo = o.t_min.value_or(*o.theorem == 1 ? zb::e2 : zb::e6);
        const double hi = o.t_max.value_or(1e5);
        if (zb::detail::below(lo, *o.theorem == 1 ? zb::e2 : zb::e6) || hi < lo || hi > 1e5)
            throw Failure{usage, "usage", "t range outside the theorem hypothesis or above 1e5"};
        if (auto v = o.params.violation())
            throw Failure{usage, "usage", "invalid parameters: " + *v};
        const std::size_t n = o.samples_set ? o.samples : (*o.theorem == 1 ? 500 : 200);
        if (n == 0)
            throw Failure{usage, "usage", "--samples must be >= 1"};
        reports.push_back(zb::verify_theorem_envelope(*o.theorem, lo, hi, n, o.params));
    } else {
        std::vector<std::string> ids;
        if (o.lemma == "all")
            ids = zb::supported_lemmas();
        else
            ids = {o.lemma};
        for (const auto& id : ids) {
            bool known = false;
            for (const auto& s : zb::supported_lemmas())
                known = known || s == id;
            if (!known)
                throw Failure{usage, "usage", "unknown lemma '" + id + "'"};
        }
        for (const auto& id : ids) {
            zb::SampleSpec spec;
            spec.seed = o.seed;
            spec.max_m = o.max_m;
            spec.t_min = o.t_min;
            spec.t_max = o.t_max;
            spec.samples = o.samples_set ? o.samples : (id == "2.5" ? 10000 : (id == "4.1" ? 200 : 100));
            if (id == "4.6")
                spec.samples = static_cast<std::size_t>(o.max_m);
            reports.push_back(zb::verify_lemma(id, spec));
        }
    }
    bool violated = false;
    bool excluded = false;
    for (const auto& r : reports) {
        violated = violated || r.violations > 0;
        excluded = excluded || r.excluded > 0;
        tab.rows.push_back({r.lemma_id, r.samples, r.violations, r.excluded, r.min_slack, r.min_slack_inputs,
                            r.max_oracle, r.error_budget_used, r.notes});
    }
    if (violated)
        return violation;
    return excluded ? nonconvergence : ok;
}

std::array<double, 6> parse_weights(const std::string& s)
{
    std::array<double, 6> w{};
    std::stringstream ss(s);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 6)
            throw Failure{usage, "usage", "--weights needs exactly 6 comma-separated values"};
        try {
            w[i++] = std::stod(item);
        } catch (const std::exception&) {
            throw Failure{usage, "usage", "--weights: cannot parse '" + item + "'"};
        }
    }
    if (i != 6)
        throw Failure{usage, "usage", "--weights needs exactly 6 comma-separated values"};
    return w;
}

int run_optimize(const Options& o, Table& tab)
{
    zb::Objective obj;
    if (o.objective == "q1") {
        obj = zb::Objective::Q1();
    } else if (o.objective == "bound") {
        obj = zb::Objective::bound_at(o.t.value_or(1e4));
    } else if (o.objective == "weighted") {
        if (o.weights.empty())
            throw Failure{usage, "usage", "--objective weighted needs --weights"};
        obj = zb::Objective::weighted(parse_weights(o.weights));
    } else {
        throw Failure{usage, "usage", "--objective must be q1, bound or weighted"};
    }
    if (o.budget < 10)
        throw Failure{usage, "usage", "--budget must be >= 10"};
    obj.validate();
    const zb::OptResult r = zb::optimize_params(obj, zb::ParamRanges{}, o.budget);
    tab.description = "optimizer trace in evaluation order; kind=best is the returned point";
    tab.columns = {"kind", "index", "k", "tau", "q", "t1", "t2", "value", "accepted"};
    std::size_t i = 0;
    for (const auto& s : r.trace)
        tab.rows.push_back({"step", i++, s.params.k, s.params.tau, s.params.q, s.params.t1, s.params.t2, s.value,
                            s.accepted});
    tab.rows.push_back({"best", r.evaluations, r.best.k, r.best.tau, r.best.q, r.best.t1, r.best.t2,
                        r.objective_value, true});
    return ok;
}

int run_scan(const Options& o, Table& tab)
{
    const int which = o.theorem.value_or(1);
    if (auto v = o.params.violation())
        throw Failure{usage, "usage", "invalid parameters: " + *v};
    if (o.crossover) {
        const double log_t_max = o.t_max ? std::log(*o.t_max) : std::log(1e300);
        if (log_t_max < 6)
            throw Failure{usage, "usage", "--t-max must be >= e^6 for the crossover scan"};
        tab.description = "first t where the parametric bound drops below the closed-form bound; empty if none";
        tab.columns = {"log_t", "t", "log_theorem1", "log_theorem2"};
        if (auto c = zb::crossover_scan_log(o.params, log_t_max))
            tab.rows.push_back({c->log_t, c->t, c->log_theorem1, c->log_theorem2});
        return ok;
    }
    const auto ts = t_values(o, which == 1 ? zb::e2 : zb::e6,
                             which == 1 ? "e^2 required by theorem 1" : "e^6 required by theorem 2");
    for (double t : ts)
        if (t > 1e5)
            throw Failure{usage, "usage", "scan supports t <= 1e5"};
    const zb::BoundCoefficients c = zb::theorem2_coeffs(o.params);
    tab.description = "bound vs |zeta'| oracle; slack = bound - oracle - oracle_error";
    tab.columns = {"t", "bound", "oracle", "oracle_error", "slack", "converged"};
    bool violated = false;
    bool nc = false;
    for (double t : ts) {
        const double bound = which == 1 ? zb::theorem1_bound(t).total : zb::q_polynomial(c.Q, t);
        const auto z = zb::zeta_prime_oracle({t}, 1e-4);
        const double oracle = std::abs(z.value);
        const double slack = bound - oracle - z.error_bound;
        nc = nc || !z.converged;
        violated = violated || (z.converged && slack < 0);
        tab.rows.push_back({t, bound, oracle, z.error_bound, slack, z.converged});
    }
    if (violated)
        return violation;
    return nc ? nonconvergence : ok;
}

void fail(const Failure& f)
{
    std::string msg = f.message;
    for (char& ch : msg)
        if (ch == '"' || ch == '\n')
            ch = '\'';
    std::cerr << "zetabound: error code=" << f.code << " kind=" << f.kind << " message=\"" << msg << "\"\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"zetabound: explicit bounds for zeta'(1/2+it)"};
    Options o;
    std::string positional;
    double t = 0, t_min = 0, t_max = 0;
    int theorem = 0;
    app.add_option("cmd", positional, "eval | bound | verify | optimize | scan");
    app.add_option("--command", o.command, "same as the positional command");
    auto* opt_t = app.add_option("--t", t, "single t");
    auto* opt_tmin = app.add_option("--t-min", t_min, "sweep start (geometric spacing)");
    auto* opt_tmax = app.add_option("--t-max", t_max, "sweep end");
    auto* opt_samples = app.add_option("--samples", o.samples, "sweep points or samples per lemma");
    auto* opt_theorem = app.add_option("--theorem", theorem, "1 (closed form) or 2 (parametric)")->check(CLI::IsMember({1, 2}));
    app.add_option("--k", o.params.k);
    app.add_option("--tau", o.params.tau);
    app.add_option("--q", o.params.q);
    app.add_option("--t1", o.params.t1);
    app.add_option("--t2", o.params.t2);
    auto* opt_lemma = app.add_option("--lemma", o.lemma, "lemma id or 'all'");
    app.add_option("--seed", o.seed);
    auto* opt_budget = app.add_option("--budget", o.budget, "optimizer evaluation budget");
    app.add_option("--out", o.out, "output file (default: $ZETABOUND_OUT_DIR/<command>.<ext>, else stdout)");
    app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "jsonl"}));
    auto* opt_maxm = app.add_option("--max-m", o.max_m, "largest M for the weight-sum sweep");
    auto* opt_obj = app.add_option("--objective", o.objective, "q1 | bound | weighted");
    app.add_option("--weights", o.weights, "six comma-separated Q weights");
    auto* opt_cross = app.add_flag("--crossover", o.crossover, "scan: locate the crossover instead of sweeping");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fail({usage, "usage", e.what()});
        return usage;
    }

    try {
        if (!positional.empty() && !o.command.empty() && positional != o.command)
            throw Failure{usage, "usage", "positional command and --command disagree"};
        if (o.command.empty())
            o.command = positional;
        static const std::vector<std::string> commands = {"eval", "bound", "verify", "optimize", "scan"};
        if (std::find(commands.begin(), commands.end(), o.command) == commands.end())
            throw Failure{usage, "usage", "command must be one of eval, bound, verify, optimize, scan"};
        if (*opt_t)
            o.t = t;
        if (*opt_tmin)
            o.t_min = t_min;
        if (*opt_tmax)
            o.t_max = t_max;
        if (*opt_theorem)
            o.theorem = theorem;
        o.samples_set = opt_samples->count() > 0;

        auto only = [&](CLI::Option* opt, std::initializer_list<const char*> cmds) {
            if (!*opt)
                return;
            for (const char* c : cmds)
                if (o.command == c)
                    return;
            throw Failure{usage, "usage", opt->get_name() + " is not valid for command " + o.command};
        };
        only(opt_lemma, {"verify"});
        only(opt_maxm, {"verify"});
        only(opt_budget, {"optimize"});
        only(opt_obj, {"optimize"});
        only(opt_cross, {"scan"});
        if (o.command == "verify" && *opt_t)
            throw Failure{usage, "usage", "verify takes --t-min/--t-max, not --t"};
        if (o.command == "optimize" && (*opt_tmin || *opt_tmax || *opt_theorem))
            throw Failure{usage, "usage", "optimize takes --t (objective target) only"};

        Table tab;
        tab.command = o.command;
        int status = ok;
        if (o.command == "eval")
            status = run_eval(o, tab);
        else if (o.command == "bound")
            status = run_bound(o, tab);
        else if (o.command == "verify")
            status = run_verify(o, tab);
        else if (o.command == "optimize")
            status = run_optimize(o, tab);
        else
            status = run_scan(o, tab);

        std::string path = o.out;
        if (path.empty()) {
            if (const char* dir = std::getenv("ZETABOUND_OUT_DIR"); dir && *dir)
                path = std::string(dir) + "/" + o.command + (o.format == "csv" ? ".csv" : ".jsonl");
        }
        if (path.empty()) {
            tab.write(std::cout, o.format);
        } else {
            std::ofstream f(path);
            if (!f)
                throw Failure{usage, "usage", "cannot write " + path};
            tab.write(f, o.format);
        }
        if (status == violation)
            fail({violation, "violation", "at least one bound was violated; see output"});
        else if (status == nonconvergence)
            fail({nonconvergence, "nonconvergence", "at least one oracle or evaluation did not converge; see output"});
        return status;
    } catch (const Failure& f) {
        fail(f);
        return f.code;
    } catch (const zb::domain_error& e) {
        fail({usage, "domain", e.what()});
        return usage;
    } catch (const zb::invalid_input& e) {
        fail({usage, "input", e.what()});
        return usage;
    } catch (const std::exception& e) {
        fail({nonconvergence, "numeric", e.what()});
        return nonconvergence;
    }
}
