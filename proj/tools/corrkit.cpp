// corrkit command-line front end
#include "corrkit/classical.hpp"
#include "corrkit/io.hpp"
#include "corrkit/measures.hpp"
#include "corrkit/partitions.hpp"
#include "corrkit/randgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace corrkit;
using nlohmann::json;

namespace {

struct Out {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Out(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw Error("io", "cannot write " + path);
            os = &file;
        }
    }
};

std::string g12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", sig12(x));
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

unsigned thread_count() {
    unsigned t = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CORRKIT_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) t = std::min<unsigned>(t, cap);
    }
    return t;
}

template <class F>
void parallel_for(std::size_t count, F&& f) {
    const unsigned T = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
    if (T <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(T);
    for (unsigned t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += T) f(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

std::vector<ModeStructure> dims_list(const std::vector<std::string>& items) {
    std::vector<ModeStructure> out;
    for (const auto& it : items) {
        std::stringstream ss(it);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(parse_dims(tok));
    }
    return out;
}

json report_json(const MeasureReport& r) {
    json j;
    j["dims"] = r.structure.dims();
    j["correlance"] = sig12(r.correlance);
    j["discordance"] = sig12(r.discordance);
    j["diagonal_discordance"] = sig12(r.diagonal_discordance);
    j["strong_discordance"] = sig12(r.strong_discordance);
    j["raw"] = {{"correlance", sig12(r.raw_correlance)},
                {"nondiagonality", sig12(r.raw_nondiagonality)},
                {"strong_discordance", sig12(r.raw_strong.theta)},
                {"diagonal_strong_discordance", sig12(r.raw_strong.dsd)}};
    if (r.diagonal) j["diag_correlance"] = sig12(r.diag_correlance);
    j["norms"] = {{"correlance", sig12(r.norms.n_correlance)},
                  {"diag_correlance", sig12(r.norms.n_diag_correlance)},
                  {"strong_discordance", sig12(r.norms.n_strong_discordance)},
                  {"L_star", r.norms.L_star}};
    return j;
}

int cmd_measures(const std::string& file, const std::string& fmt, const std::string& out, const Tolerances& tol) {
    auto rho = load_state(file, tol);
    auto r = evaluate_all(rho, tol);
    Out o(out);
    if (fmt == "csv") {
        *o.os << "measure,raw,normalized\n";
        for (const auto& m : r.results()) *o.os << m.name << ',' << g12(m.raw) << ',' << g12(m.normalized) << '\n';
    } else {
        *o.os << report_json(r).dump(2) << '\n';
    }
    return 0;
}

int cmd_normtable(const std::vector<std::string>& dims, std::size_t max_n, const std::string& fmt, const std::string& out) {
    auto list = dims_list(dims);
    if (list.empty()) list = structures_up_to(max_n, false);
    Out o(out);
    json rows = json::array();
    if (fmt == "csv") *o.os << "dims,n,L_star,N_C,N_CD,N_Theta\n";
    for (const auto& s : list) {
        const auto& r = normalization_report(s);
        if (fmt == "csv")
            *o.os << s.str() << ',' << s.n() << ',' << r.L_star << ',' << g12(r.n_correlance) << ','
                  << g12(r.n_diag_correlance) << ',' << g12(r.n_strong_discordance) << '\n';
        else
            rows.push_back({{"dims", s.str()}, {"n", s.n()}, {"L_star", r.L_star}, {"N_C", sig12(r.n_correlance)},
                            {"N_CD", sig12(r.n_diag_correlance)}, {"N_Theta", sig12(r.n_strong_discordance)}});
    }
    if (fmt != "csv") *o.os << json{{"structures", rows}}.dump(2) << '\n';
    return 0;
}

int cmd_sweep(int family, const std::string& dims, std::size_t samples, std::uint64_t seed, const std::string& fmt,
              const std::string& out) {
    const ModeStructure s = parse_dims(dims);
    if (family < 1 || family > 6) throw Error("bad_family", "family must be within 1..6");
    struct Row {
        double c, d, t;
    };
    std::vector<Row> rows(samples);
    parallel_for(samples, [&](std::size_t i) {
        Rng rng(seed, i);
        auto rho = family_state(family, s, rng);
        auto r = evaluate_all(rho);
        rows[i] = {r.correlance, r.discordance, r.strong_discordance};
    });
    Row mx{-1, -1, -1}, mn{2, 2, 2};
    for (const auto& r : rows) {
        mx = {std::max(mx.c, r.c), std::max(mx.d, r.d), std::max(mx.t, r.t)};
        mn = {std::min(mn.c, r.c), std::min(mn.d, r.d), std::min(mn.t, r.t)};
    }
    Out o(out);
    if (fmt == "json") {
        json j = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            j.push_back({{"index", i}, {"correlance", sig12(rows[i].c)}, {"discordance", sig12(rows[i].d)},
                         {"strong_discordance", sig12(rows[i].t)}});
        json sum = {{"max", {{"correlance", sig12(mx.c)}, {"discordance", sig12(mx.d)}, {"strong_discordance", sig12(mx.t)}}},
                    {"min", {{"correlance", sig12(mn.c)}, {"discordance", sig12(mn.d)}, {"strong_discordance", sig12(mn.t)}}}};
        *o.os << json{{"family", family}, {"dims", s.str()}, {"seed", seed}, {"samples", j}, {"summary", sum}}.dump(1)
              << '\n';
    } else {
        *o.os << "index,correlance,discordance,strong_discordance\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            *o.os << i << ',' << g12(rows[i].c) << ',' << g12(rows[i].d) << ',' << g12(rows[i].t) << '\n';
        *o.os << "max," << g12(mx.c) << ',' << g12(mx.d) << ',' << g12(mx.t) << '\n';
        *o.os << "min," << g12(mn.c) << ',' << g12(mn.d) << ',' << g12(mn.t) << '\n';
    }
    return 0;
}

int cmd_normtest(std::size_t max_n, std::size_t samples, std::uint64_t seed, double corrupt, const std::string& out) {
    const double bound = 1.0 + 1e-9;
    json structs = json::array(), failures = json::array();
    const auto list = structures_up_to(max_n, true);
    for (std::size_t si = 0; si < list.size(); ++si) {
        const auto& s = list[si];
        std::vector<double> worst(2, 0.0);
        std::vector<json> bad(samples * 2);
        parallel_for(samples * 2, [&](std::size_t i) {
            const bool diag = i >= samples;
            const std::uint64_t stream = (static_cast<std::uint64_t>(si) << 32) | i;
            Rng rng(seed, stream);
            auto rho = diag ? random_diagonal(s, rng) : hs_mixed(s, rng);
            auto r = evaluate_all(rho);
            double top = std::max({r.correlance, r.discordance, r.diagonal_discordance, r.strong_discordance});
            if (diag) top = std::max(top, r.diag_correlance);
            top /= corrupt;
            if (top > bound) bad[i] = {{"dims", s.str()}, {"seed", seed}, {"stream", stream}, {"kind", diag ? "diagonal" : "mixed"}, {"value", top}};
            bad[i]["_top"] = top;
        });
        for (std::size_t i = 0; i < bad.size(); ++i) {
            double top = bad[i]["_top"].get<double>();
            worst[i >= samples] = std::max(worst[i >= samples], top);
            if (bad[i].size() > 1) {
                bad[i].erase("_top");
                failures.push_back(bad[i]);
            }
        }
        structs.push_back({{"dims", s.str()}, {"max_mixed", sig12(worst[0])}, {"max_diagonal", sig12(worst[1])}});
    }
    const bool pass = failures.empty();
    Out o(out);
    *o.os << json{{"result", pass ? "pass" : "fail"}, {"max_n", max_n}, {"samples", samples}, {"seed", seed},
                  {"structures", structs}, {"failures", failures}}
                 .dump(2)
          << '\n';
    return pass ? 0 : 2;
}

std::vector<std::pair<double, double>> parse_bounds(const std::string& text, int N) {
    std::vector<std::pair<double, double>> b;
    if (text.empty() || text == "data") return b;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto c = tok.find(':');
        if (c == std::string::npos) throw Error("bad_bounds", "bounds look like lo:hi[,lo:hi...]");
        b.push_back({std::stod(tok.substr(0, c)), std::stod(tok.substr(c + 1))});
    }
    if (b.size() == 1)
        b.assign(N, b[0]);
    else if (static_cast<int>(b.size()) != N)
        throw Error("bad_bounds", "need one bounds pair per variable (or a single pair)");
    return b;
}

std::vector<int> parse_bins(const std::string& text, int N) {
    std::vector<int> b;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) b.push_back(std::stoi(tok));
    if (b.size() == 1) b.assign(N, b[0]);
    if (static_cast<int>(b.size()) != N) throw Error("bad_plan", "need one bin count per variable (or a single count)");
    return b;
}

double diag_c(const DataSet& d, const std::vector<int>& bins, json& notes) {
    // a zero-range column gets one bin: it carries no correlation
    auto b = bins;
    for (int m = 0; m < d.N(); ++m) {
        const bool declared = m < static_cast<int>(d.bounds.size());
        if (!declared && d.X.col(m).minCoeff() == d.X.col(m).maxCoeff() && b[m] > 1) {
            b[m] = 1;
            notes.push_back("column " + std::to_string(m + 1) + " is constant; binned as a single level");
        }
    }
    auto plan = make_plan(d, b);
    auto rho = build_density(d, plan);
    return diag_correlance(rho);
}

int cmd_classical(const std::string& csv, const std::string& scen, std::size_t points, double noise, std::uint64_t seed,
                  const std::string& bins_s, const std::string& bounds_s, bool dump, const std::string& out) {
    DataSet d = csv.empty() ? scenario(scen.empty() ? 'c' : scen[0], points, noise, seed) : read_csv(csv);
    if (!scen.empty() && scen.size() != 1) throw Error("bad_scenario", "scenario is one of a, b, c, d");
    if (d.N() < 2) throw Error("bad_csv", "need at least two variables");
    d.bounds = parse_bounds(bounds_s, d.N());
    auto bins = parse_bins(bins_s, d.N());
    json notes = json::array();
    json pairs = json::array();
    for (int a = 0; a < d.N(); ++a)
        for (int b = a + 1; b < d.N(); ++b) {
            DataSet p;
            p.X.resize(d.X.rows(), 2);
            p.X.col(0) = d.X.col(a);
            p.X.col(1) = d.X.col(b);
            if (!d.bounds.empty()) p.bounds = {d.bounds[a], d.bounds[b]};
            json e = {{"a", d.names.size() > std::size_t(a) ? d.names[a] : std::to_string(a + 1)},
                      {"b", d.names.size() > std::size_t(b) ? d.names[b] : std::to_string(b + 1)}};
            try {
                e["abs_pearson"] = sig12(std::abs(pearson(p, 0, 1)));
            } catch (const Error& err) {
                e["abs_pearson"] = nullptr;
                e["pearson_error"] = err.what();
            }
            e["diag_correlance"] = sig12(diag_c(p, {bins[a], bins[b]}, notes));
            pairs.push_back(e);
        }
    json j = {{"samples", d.samples()}, {"variables", d.N()}, {"bins", bins}, {"pairs", pairs}};
    if (d.N() > 2) j["diag_correlance"] = sig12(diag_c(d, bins, notes));
    if (dump) {
        auto b = bins;
        auto plan = make_plan(d, b);
        auto rho = build_density(d, plan);
        std::vector<double> diag;
        for (std::size_t i = 0; i < rho.n(); ++i) diag.push_back(sig12(rho.matrix()(i, i).real()));
        j["rho"] = {{"dims", rho.structure().dims()}, {"diag", diag}};
    }
    if (!notes.empty()) j["notes"] = notes;
    Out o(out);
    *o.os << j.dump(2) << '\n';
    return 0;
}

int cmd_multi(const std::string& file, const std::string& out, const Tolerances& tol) {
    auto rho = load_state(file, tol);
    if (rho.N() < 2) throw Error("unsupported_structure", "multicorrelance needs N >= 2");
    auto arr = multicorrelance_array(rho);
    json j;
    j["dims"] = rho.structure().dims();
    j["array"] = array_to_json(arr);
    j["scalar_count"] = arr.scalar_count();
    json kp = json::array();
    for (int k = 2; k <= rho.N(); ++k) {
        auto v = k_partitional_multicorrelance(rho, k);
        json parts = json::array();
        for (const auto& p : enumerate_partitions(arr.groups.back().modes, k)) parts.push_back(p.str());
        kp.push_back({{"k", k}, {"raw", sig12(v.raw)}, {"normalized", sig12(v.normalized)}, {"partitions", parts}});
    }
    j["k_partitional"] = kp;
    auto m = multicorrelance(rho);
    j["multicorrelance"] = {{"raw", sig12(m.raw)}, {"normalized", sig12(m.normalized)}};
    auto a = absolute_multicorrelance(arr);
    j["absolute_multicorrelance"] = {{"raw", sig12(a.raw)}, {"normalized", sig12(a.normalized)}};
    Out o(out);
    *o.os << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corrkit: exactly computable nonlocal-correlation measures"};
    app.require_subcommand(1);

    Tolerances tol;
    std::string out, fmt = "json";
    auto add_tol = [&](CLI::App* c) {
        c->add_option("--tol-herm", tol.herm, "Hermiticity tolerance");
        c->add_option("--tol-trace", tol.trace, "unit-trace tolerance");
        c->add_option("--tol-psd", tol.psd, "negative-eigenvalue tolerance");
        c->add_option("--tol-diag", tol.diag, "largest off-diagonal magnitude for diagonal inputs");
        c->add_option("--tol-offdiag", tol.offdiag, "raw nondiagonality threshold for sgn");
    };

    std::string state_file;
    auto* m = app.add_subcommand("measures", "all scalar measures of a state file");
    m->add_option("state", state_file, "state JSON file")->required();
    m->add_option("--format", fmt, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    m->add_option("--out", out, "output file (default stdout)");
    add_tol(m);

    std::vector<std::string> dims_items;
    std::size_t max_n = 36;
    std::string nt_fmt = "csv";
    auto* nt = app.add_subcommand("normtable", "normalization factors per structure");
    nt->add_option("--dims", dims_items, "structures, e.g. 2x2,2x3x4 (default: all with n <= max-n)");
    nt->add_option("--max-n", max_n, "largest total dimension when --dims is absent");
    nt->add_option("--format", nt_fmt, "csv | json")->check(CLI::IsMember({"json", "csv"}));
    nt->add_option("--out", out, "output file");

    int family = 1;
    std::string dims = "2x2";
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::string sw_fmt = "csv";
    auto* sw = app.add_subcommand("sweep", "ensemble sweep over one of the six families");
    sw->add_option("--family", family, "family 1..6")->check(CLI::Range(1, 6));
    sw->add_option("--dims", dims, "structure, e.g. 2x2");
    sw->add_option("--samples", samples, "sample count");
    sw->add_option("--seed", seed, "seed");
    sw->add_option("--format", sw_fmt, "csv | json")->check(CLI::IsMember({"json", "csv"}));
    sw->add_option("--out", out, "output file");

    std::size_t nt_max = 12, nt_samples = 1000;
    double corrupt = 1.0;
    auto* ntest = app.add_subcommand("normtest", "check the normalization bound on random ensembles");
    ntest->add_option("--max-n", nt_max, "largest total dimension");
    ntest->add_option("--samples", nt_samples, "states per structure and kind");
    ntest->add_option("--seed", seed, "seed");
    ntest->add_option("--corrupt-norm", corrupt, "test hook: scale every normalization by this factor");
    ntest->add_option("--out", out, "output file");

    std::string csv, scen, bins = "4", bounds;
    std::size_t points = 200;
    double noise = 0.05;
    bool dump = false;
    auto* cl = app.add_subcommand("classical", "histogram density matrix and Pearson comparison");
    cl->add_option("csv", csv, "CSV file with a header row");
    cl->add_option("--scenario", scen, "generate data instead: a | b | c | d");
    cl->add_option("--samples", points, "points for --scenario");
    cl->add_option("--noise", noise, "uniform noise half-width for --scenario");
    cl->add_option("--seed", seed, "seed for --scenario");
    cl->add_option("--bins", bins, "bins per variable, e.g. 4 or 4,3");
    cl->add_option("--bounds", bounds, "lo:hi[,lo:hi...] or 'data'");
    cl->add_flag("--dump-rho", dump, "include the histogram diagonal");
    cl->add_option("--out", out, "output file");

    auto* mu = app.add_subcommand("multi", "partitional correlances and the multicorrelance array");
    mu->add_option("state", state_file, "state JSON file")->required();
    mu->add_option("--out", out, "output file");
    add_tol(mu);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump() << '\n';
        return 64;
    }

    try {
        if (*m) return cmd_measures(state_file, fmt, out, tol);
        if (*nt) return cmd_normtable(dims_items, max_n, nt_fmt, out);
        if (*sw) return cmd_sweep(family, dims, samples, seed, sw_fmt, out);
        if (*ntest) return cmd_normtest(nt_max, nt_samples, seed, corrupt, out);
        if (*cl) {
            if (csv.empty() && scen.empty()) throw Error("usage", "give a CSV file or --scenario");
            return cmd_classical(csv, scen, points, noise, seed, bins, bounds, dump, out);
        }
        if (*mu) return cmd_multi(state_file, out, tol);
    } catch (const Error& e) {
        std::cerr << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << '\n';
        return 1;
    }
    return 1;
}
