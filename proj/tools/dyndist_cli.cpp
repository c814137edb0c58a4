// Command line harness: loads a graph, replays an update/query stream
// against the selected engine, and reports one CSV row per answered command
// (id, wall time, field-op count, answer digest). With --oracle-check every
// answer is compared against a brute-force recomputation and the process
// exits nonzero on any bound violation.
//
// File formats:
//   graph:  "n m directed|undirected" then m lines "u v w"
//   stream: one command per line:
//     U u v w   update edge weight (w >= 1 or "inf")
//     Q a,b;c,d batch distance query I;J
//     S src     single-source row
//     D / R / E / C / X   diameter / radius / eccentricities / closeness /
//                         exact diameter

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyndist/complexity.hpp"
#include "dyndist/errors.hpp"
#include "dyndist/longrange.hpp"
#include "dyndist/metrics.hpp"
#include "dyndist/minplus.hpp"
#include "dyndist/oracle.hpp"
#include "dyndist/shorthop.hpp"

using namespace dyndist;

namespace {

struct Command {
    int line = 0;
    char kind = 0;  // U Q S D R E C X
    uint32_t u = 0, v = 0;
    double w = 0.0;
    std::vector<uint32_t> I, J;
};

struct Inputs {
    DynGraph graph{0, true, 1.0};
    std::vector<Command> commands;
    std::vector<std::string> names;  // index -> token
};

class SymbolTable {
  public:
    explicit SymbolTable(uint32_t cap) : cap_(cap) {}
    uint32_t intern(const std::string& tok, int line, int col) {
        auto it = ids_.find(tok);
        if (it != ids_.end()) return it->second;
        if (names_.size() >= cap_)
            throw ParseError("more than n distinct node names", line, col);
        const auto id = static_cast<uint32_t>(names_.size());
        ids_.emplace(tok, id);
        names_.push_back(tok);
        return id;
    }
    const std::vector<std::string>& names() const { return names_; }

  private:
    uint32_t cap_;
    std::map<std::string, uint32_t> ids_;
    std::vector<std::string> names_;
};

double parse_weight(const std::string& tok, int line, int col) {
    if (tok == "inf") return kInf;
    size_t used = 0;
    double w = 0.0;
    try {
        w = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("malformed weight '" + tok + "'", line, col);
    }
    if (used != tok.size())
        throw ParseError("malformed weight '" + tok + "'", line, col);
    if (!(w >= 1.0))
        throw ParseError("weights must be >= 1 (got '" + tok + "')", line, col);
    return w;
}

std::vector<uint32_t> parse_node_list(const std::string& tok, SymbolTable& sym,
                                      int line, int col) {
    std::vector<uint32_t> out;
    std::string cur;
    std::istringstream in(tok);
    while (std::getline(in, cur, ',')) {
        if (cur.empty())
            throw ParseError("empty node name in list", line, col);
        out.push_back(sym.intern(cur, line, col));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Inputs load_inputs(const std::string& graph_path, const std::string& stream_path) {
    Inputs in;
    std::ifstream gf(graph_path);
    if (!gf) throw ConfigError("cannot open graph file: " + graph_path);

    std::string header;
    if (!std::getline(gf, header)) throw ParseError("empty graph file", 1, 1);
    uint32_t n = 0, m = 0;
    std::string kind;
    {
        std::istringstream hs(header);
        if (!(hs >> n >> m >> kind) ||
            (kind != "directed" && kind != "undirected"))
            throw ParseError("expected header \"n m directed|undirected\"", 1, 1);
    }
    SymbolTable sym(n);

    struct RawEdge {
        uint32_t u, v;
        double w;
    };
    std::vector<RawEdge> raw;
    raw.reserve(m);
    double wmax = 1.0;
    for (uint32_t i = 0; i < m; ++i) {
        std::string line;
        if (!std::getline(gf, line))
            throw ParseError("expected " + std::to_string(m) + " edge lines",
                             int(i + 2), 1);
        std::istringstream ls(line);
        std::string ut, vt, wt;
        if (!(ls >> ut >> vt >> wt))
            throw ParseError("expected \"u v w\"", int(i + 2), 1);
        const uint32_t u = sym.intern(ut, int(i + 2), 1);
        const uint32_t v = sym.intern(vt, int(i + 2), 1);
        const double w = parse_weight(wt, int(i + 2), 1);
        if (w == kInf)
            throw ParseError("graph edges must have finite weight", int(i + 2), 1);
        raw.push_back({u, v, w});
        wmax = std::max(wmax, w);
    }

    // Stream (parsed before building the graph so the weight cap covers
    // every update as well).
    std::vector<Command> cmds;
    if (!stream_path.empty()) {
        std::ifstream sf(stream_path);
        if (!sf) throw ConfigError("cannot open stream file: " + stream_path);
        std::string line;
        int lineno = 0;
        while (std::getline(sf, line)) {
            ++lineno;
            std::istringstream ls(line);
            std::string op;
            if (!(ls >> op)) continue;  // blank line
            Command c;
            c.line = lineno;
            if (op == "U") {
                c.kind = 'U';
                std::string ut, vt, wt;
                if (!(ls >> ut >> vt >> wt))
                    throw ParseError("expected \"U u v w\"", lineno, 1);
                c.u = sym.intern(ut, lineno, 1);
                c.v = sym.intern(vt, lineno, 1);
                c.w = parse_weight(wt, lineno, 3);
                if (c.w != kInf) wmax = std::max(wmax, c.w);
            } else if (op == "Q") {
                c.kind = 'Q';
                std::string sets;
                if (!(ls >> sets))
                    throw ParseError("expected \"Q I;J\"", lineno, 1);
                const auto semi = sets.find(';');
                if (semi == std::string::npos)
                    throw ParseError("expected ';' between I and J", lineno, 3);
                c.I = parse_node_list(sets.substr(0, semi), sym, lineno, 3);
                c.J = parse_node_list(sets.substr(semi + 1), sym, lineno,
                                      int(semi) + 4);
            } else if (op == "S") {
                c.kind = 'S';
                std::string st;
                if (!(ls >> st)) throw ParseError("expected \"S src\"", lineno, 1);
                c.u = sym.intern(st, lineno, 3);
            } else if (op == "D" || op == "R" || op == "E" || op == "C" ||
                       op == "X") {
                c.kind = op[0];
            } else {
                throw ParseError("unknown command '" + op + "'", lineno, 1);
            }
            std::string rest;
            if (ls >> rest)
                throw ParseError("trailing tokens after command", lineno, 1);
            cmds.push_back(std::move(c));
        }
    }

    DynGraph g(n, kind == "directed", wmax);
    for (const RawEdge& e : raw) g.set_weight(e.u, e.v, e.w);
    in.graph = std::move(g);
    in.commands = std::move(cmds);
    in.names = sym.names();
    return in;
}

// FNV-1a over the answer payload; doubles hash via their bit patterns.
struct Digest {
    uint64_t h = 0xcbf29ce484222325ull;
    void feed(uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    }
    void feed(double d) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        std::memcpy(&bits, &d, sizeof(bits));
        feed(bits);
    }
    void feed(const DistMatrix& m) {
        feed(uint64_t(m.rows));
        feed(uint64_t(m.cols));
        for (double v : m.data) feed(v);
    }
    void feed(const std::vector<double>& v) {
        feed(uint64_t(v.size()));
        for (double x : v) feed(x);
    }
};

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct CheckResult {
    double min_ratio = 1.0, max_ratio = 1.0;
    uint64_t violations = 0;
};

// est/truth ratios over finite pairs; counts never-underestimate breaks and
// ratio breaks beyond (1+eps).
void fold_ratio(CheckResult& r, double est, double truth, double eps) {
    constexpr double tol = 1e-9;
    if (truth == kInf) {
        if (est != kInf) ++r.violations;  // finite answer for unreachable pair
        return;
    }
    if (est == kInf) {
        ++r.violations;  // lost a reachable pair
        return;
    }
    if (truth == 0.0) {
        if (est != 0.0) ++r.violations;
        return;
    }
    const double ratio = est / truth;
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
    if (ratio < 1.0 - tol) ++r.violations;
    if (ratio > (1.0 + eps) * (1.0 + tol)) ++r.violations;
}

struct Options {
    std::string graph_path, stream_path, csv_path, mode = "apsp";
    double eps = 0.5;
    double s_exp = -1.0, mu_exp = -1.0, nu_exp = -1.0;
    uint64_t seed = 1;
    uint64_t prime = PrimeField::kDefaultPrime;
    bool oracle_check = false;
    unsigned threads = 1;
};

uint32_t exp_to_count(uint32_t n, double e, uint32_t lo) {
    if (e < 0.0) return 0;  // engine default
    const double v = std::pow(double(std::max(n, 2u)), e);
    return std::max(lo, static_cast<uint32_t>(std::lround(std::min(v, 1e9))));
}

int run(const Options& opt) {
    set_thread_count(opt.threads);

    std::ostream* out = &std::cout;
    std::ofstream csv;
    if (!opt.csv_path.empty()) {
        csv.open(opt.csv_path);
        if (!csv) throw ConfigError("cannot open csv output: " + opt.csv_path);
        out = &csv;
    }

    if (opt.mode == "complexity") {
        *out << "name,target,value,params\n";
        for (const auto& h :
             complexity::headline_exponents(complexity::OmegaTable::builtin())) {
            *out << '"' << h.name << "\"," << h.target << ',' << h.value << ",\"";
            for (size_t i = 0; i < h.params.size(); ++i)
                *out << (i ? " " : "") << h.params[i];
            *out << "\"\n";
        }
        return 0;
    }

    const Inputs in = load_inputs(opt.graph_path, opt.stream_path);
    const DynGraph& g0 = in.graph;
    const uint32_t n = g0.n();

    const uint32_t hops = exp_to_count(n, opt.s_exp, 1);
    const uint32_t mu_cap = exp_to_count(n, opt.mu_exp, 4);
    const uint32_t nu_cap = exp_to_count(n, opt.nu_exp, 4);
    (void)nu_cap;  // the composed engines key both layers off mu

    LongRangeParams lp;
    lp.hops = hops;
    lp.eps = opt.eps;
    lp.mu_cap = mu_cap;
    lp.prime = opt.prime;
    lp.seed = opt.seed;
    lp.real_weights = !g0.integer_weights();

    const bool unweighted = [&] {
        for (const auto& e : g0.edges())
            if (e.w != 1.0) return false;
        return true;
    }();

    // Mode engines (one per run).
    std::unique_ptr<ApspOracle> apsp;
    std::unique_ptr<SsspOracle> sssp;
    std::unique_ptr<UndirectedOracle> undirected;
    std::unique_ptr<ShortHopOracle> shorto;  // metric modes
    std::unique_ptr<ExactDiameterEngine> exact;
    uint32_t metric_hops = hops != 0 ? hops : std::max<uint32_t>(
        2, static_cast<uint32_t>(std::lround(std::pow(
               double(std::max(n, 2u)), complexity::balanced_diameter15().s))));

    auto need_undirected = [&](const char* what) {
        if (g0.directed())
            throw ConfigError(std::string(what) + " mode needs an undirected graph");
    };
    auto need_unweighted = [&](const char* what) {
        if (!unweighted)
            throw ConfigError(std::string(what) + " mode needs unit weights");
    };

    SplitMix64 master(opt.seed);
    if (opt.mode == "apsp" || opt.mode == "apsp-explicit") {
        apsp = std::make_unique<ApspOracle>(g0, lp);
    } else if (opt.mode == "sssp") {
        sssp = std::make_unique<SsspOracle>(g0, lp);
    } else if (opt.mode == "undirected") {
        need_undirected("undirected");
        undirected = std::make_unique<UndirectedOracle>(g0, lp);
    } else if (opt.mode == "diameter15" || opt.mode == "diameter-eps") {
        need_unweighted(opt.mode.c_str());
        ShortHopParams sp;
        sp.bound = metric_hops;
        sp.eps = opt.eps / 2.0;
        sp.mu_cap = mu_cap != 0 ? mu_cap : 16;
        sp.nu_cap = sp.mu_cap;
        sp.prime = opt.prime;
        sp.seed = master.fork();
        shorto = std::make_unique<ShortHopOracle>(g0, sp);
    } else if (opt.mode == "radius") {
        need_undirected("radius");
        need_unweighted("radius");
        ShortHopParams sp;
        sp.bound = uint64_t(2) * metric_hops;  // radius <= diameter/2 slack
        sp.eps = opt.eps / 2.0;
        sp.mu_cap = mu_cap != 0 ? mu_cap : 16;
        sp.nu_cap = sp.mu_cap;
        sp.prime = opt.prime;
        sp.seed = master.fork();
        shorto = std::make_unique<ShortHopOracle>(g0, sp);
    } else if (opt.mode == "ecc" || opt.mode == "closeness") {
        need_undirected(opt.mode.c_str());
        need_unweighted(opt.mode.c_str());
        undirected = std::make_unique<UndirectedOracle>(g0, lp);
    } else if (opt.mode == "exact-diam") {
        ExactDiameterParams ep;
        ep.hops = hops;
        ep.mu_cap = mu_cap;
        ep.prime = opt.prime;
        ep.seed = master.fork();
        exact = std::make_unique<ExactDiameterEngine>(g0, ep);
    } else {
        throw ConfigError("unknown mode: " + opt.mode);
    }

    DynGraph live = g0;  // mirror for oracle checks

    *out << "id,command,wall_ms,field_ops,digest";
    if (opt.oracle_check) *out << ",min_ratio,max_ratio,violations";
    *out << "\n";

    bool any_violation = false;
    uint64_t metric_seed = opt.seed * 0x9e3779b9u + 17;

    for (const Command& c : in.commands) {
        const uint64_t ops0 = FieldOpCounter::now();
        const auto t0 = std::chrono::steady_clock::now();
        Digest dig;
        std::optional<DistMatrix> qans;
        std::optional<std::vector<double>> vans;
        std::optional<double> sans;
        bool answered = true;

        switch (c.kind) {
            case 'U': {
                live.set_weight(c.u, c.v, c.w);
                if (apsp && opt.mode == "apsp-explicit") {
                    qans = apsp->explicit_update(c.u, c.v, c.w);
                    dig.feed(*qans);
                } else {
                    if (apsp) apsp->update(c.u, c.v, c.w);
                    if (sssp) sssp->update(c.u, c.v, c.w);
                    if (undirected) undirected->update(c.u, c.v, c.w);
                    if (shorto) shorto->update(c.u, c.v, c.w);
                    if (exact) exact->update(c.u, c.v, c.w);
                    answered = false;
                }
                break;
            }
            case 'Q': {
                if (!apsp && !undirected)
                    throw ConfigError("Q command needs an apsp or undirected mode");
                const BatchQuery bq{c.I, c.J};
                qans = apsp ? apsp->query(bq) : undirected->query(bq);
                dig.feed(*qans);
                break;
            }
            case 'S': {
                if (!sssp) throw ConfigError("S command needs --mode sssp");
                vans = sssp->row(c.u);
                dig.feed(*vans);
                break;
            }
            case 'D': {
                if (!shorto) throw ConfigError("D command needs a diameter mode");
                MetricSnapshot snap = MetricSnapshot::of(*shorto);
                MetricConfig mc{opt.eps, metric_hops, 1.0, metric_seed++, 3.0};
                sans = opt.mode == "diameter-eps"
                           ? diameter_1eps(snap, live, mc).value
                           : diameter_15(snap, live, mc).value;
                dig.feed(*sans);
                break;
            }
            case 'R': {
                if (!shorto) throw ConfigError("R command needs --mode radius");
                MetricSnapshot snap = MetricSnapshot::of(*shorto);
                MetricConfig mc{opt.eps, metric_hops, 1.0, metric_seed++, 3.0};
                sans = radius_15(snap, live, mc);
                dig.feed(*sans);
                break;
            }
            case 'E': {
                if (!undirected) throw ConfigError("E command needs --mode ecc");
                MetricSnapshot snap = MetricSnapshot::of(*undirected);
                MetricConfig mc{opt.eps, metric_hops, 1.0, metric_seed++, 3.0};
                vans = eccentricities_35(snap, live, mc);
                dig.feed(*vans);
                break;
            }
            case 'C': {
                if (!undirected)
                    throw ConfigError("C command needs --mode closeness");
                MetricSnapshot snap = MetricSnapshot::of(*undirected);
                MetricConfig mc{opt.eps, metric_hops, 1.0, metric_seed++, 3.0};
                vans = closeness_all(snap, live, mc);
                dig.feed(*vans);
                break;
            }
            case 'X': {
                if (!exact) throw ConfigError("X command needs --mode exact-diam");
                sans = exact->diameter();
                dig.feed(*sans);
                break;
            }
            default:
                answered = false;
        }

        if (!answered) continue;
        const auto t1 = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        const uint64_t ops = FieldOpCounter::now() - ops0;

        *out << c.line << ',' << c.kind << ',' << ms << ',' << ops << ','
             << hex64(dig.h);

        if (opt.oracle_check) {
            CheckResult cr;
            const oracle::ExactDistances truth =
                unweighted ? oracle::bfs_apsp(live) : oracle::dijkstra_apsp(live);
            const oracle::ExactMetrics tm = oracle::exact_metrics(live);
            if (qans) {
                const std::vector<uint32_t>& I =
                    c.kind == 'Q' ? c.I : all_nodes(n);
                const std::vector<uint32_t>& J =
                    c.kind == 'Q' ? c.J : all_nodes(n);
                for (uint32_t i = 0; i < qans->rows; ++i)
                    for (uint32_t j = 0; j < qans->cols; ++j)
                        fold_ratio(cr, qans->at(i, j), truth.dist.at(I[i], J[j]),
                                   opt.eps);
            } else if (vans && c.kind == 'S') {
                for (uint32_t v = 0; v < n; ++v)
                    fold_ratio(cr, (*vans)[v], truth.dist.at(c.u, v), opt.eps);
            } else if (vans && c.kind == 'E') {
                for (uint32_t v = 0; v < n; ++v) {
                    const double e = tm.eccentricities[v], est = (*vans)[v];
                    if (e == kInf) {
                        if (est != kInf) ++cr.violations;
                        continue;
                    }
                    if (est < (3.0 - 6.0 * opt.eps) / 5.0 * e - 4.0 / 7.0 - 1e-9 ||
                        est > (1.0 + 2.0 * opt.eps) * e + 1e-9)
                        ++cr.violations;
                }
            } else if (vans && c.kind == 'C') {
                for (uint32_t v = 0; v < n; ++v) {
                    const double t = tm.closeness[v], est = (*vans)[v];
                    if (est < (1.0 - opt.eps) * t - 1e-9 ||
                        est > (1.0 + opt.eps) * t + 1e-9)
                        ++cr.violations;
                }
            } else if (sans && c.kind == 'D') {
                const double d = tm.diameter, est = *sans;
                if (d == kInf) {
                    if (est != kInf) ++cr.violations;
                } else if (est < (2.0 / 3.0 - opt.eps) * d - 1.0 / 3.0 - 1e-9 ||
                           est > (1.0 + opt.eps) * d + 1e-9) {
                    ++cr.violations;
                }
            } else if (sans && c.kind == 'R') {
                const double r = tm.radius, est = *sans;
                if (r == kInf) {
                    if (est != kInf) ++cr.violations;
                } else if (est < r / (1.0 + opt.eps) - 1e-9 ||
                           est > ((1.5 + opt.eps) * r + 2.0 / 3.0) *
                                     (1.0 + opt.eps) +
                                 1e-9) {
                    ++cr.violations;
                }
            } else if (sans && c.kind == 'X') {
                if (*sans != tm.diameter) ++cr.violations;
            }
            *out << ',' << cr.min_ratio << ',' << cr.max_ratio << ','
                 << cr.violations;
            if (cr.violations > 0) any_violation = true;
        }
        *out << "\n";
    }
    return any_violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dyndist: dynamic (1+eps)-approximate graph distances and derived "
        "metrics"};
    Options opt;
    app.add_option("--graph", opt.graph_path, "graph file");
    app.add_option("--stream", opt.stream_path, "command stream file");
    app.add_option("--mode", opt.mode,
                   "apsp|apsp-explicit|sssp|undirected|diameter15|diameter-eps|"
                   "radius|ecc|closeness|exact-diam|complexity");
    app.add_option("--epsilon", opt.eps, "approximation parameter");
    app.add_option("--s", opt.s_exp, "short-hop exponent (hops = n^s)");
    app.add_option("--mu", opt.mu_exp, "slice reset exponent (cap = n^mu)");
    app.add_option("--nu", opt.nu_exp, "exact reset exponent (cap = n^nu)");
    app.add_option("--seed", opt.seed, "master random seed");
    app.add_option("--prime", opt.prime, "field modulus");
    app.add_flag("--oracle-check", opt.oracle_check,
                 "recompute ground truth per answer, exit 1 on violations");
    app.add_option("--csv-out", opt.csv_path, "write CSV here (default stdout)");
    app.add_option("--threads", opt.threads, "worker threads for dense kernels");
    CLI11_PARSE(app, argc, argv);

    try {
        if (opt.mode != "complexity" && opt.graph_path.empty())
            throw ConfigError("--graph is required for this mode");
        return run(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
