// Command-line front end: run the black-box algorithms, the two-party
// protocols and the matrix-rank baselines, and emit machine-readable sweep
// results (JSON or CSV) for scaling curves.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbb/commmatrix.hpp"
#include "qbb/errors.hpp"
#include "qbb/nested.hpp"
#include "qbb/protocol.hpp"
#include "qbb/resultio.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Config {
    std::string algo;
    std::string protocol;
    std::string rank;
    std::vector<int> ns;
    std::vector<int> widths;
    std::vector<int> ks;
    double epsilon = 1.0 / 12;
    double delta = 0.0;
    std::string oracle_path;
    std::string oracle_b_path;
    std::string gen = "random";
    std::string gen_b = "random";
    std::string combiner = "AND";
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string format = "json";
    int cap = qbb::kDefaultQubitCap;
    bool allow_large = false;
    std::string matrix_out;
};

qbb::OracleTable make_oracle(const Config& cfg, const std::string& path,
                             const std::string& gen, int n, std::uint64_t seed) {
    if (!path.empty()) {
        qbb::OracleTable f = qbb::OracleTable::load_json(path);
        if (f.n() != n)
            throw qbb::ValidationError("oracle file arity " + std::to_string(f.n()) +
                                       " does not match --n " + std::to_string(n));
        return f;
    }
    if (gen == "zero") return qbb::OracleTable::constant(n, 0);
    if (gen == "ones") return qbb::OracleTable::constant(n, 1);
    if (gen == "random") return qbb::OracleTable::random(n, seed);
    if (gen.rfind("one", 0) == 0) {
        std::uint64_t where = 0;
        if (gen.size() > 4 && gen[3] == ':') where = std::stoull(gen.substr(4));
        return qbb::OracleTable::single_one(n, where);
    }
    if (gen.rfind("bits:", 0) == 0)
        return qbb::OracleTable::from_bitstring(n, gen.substr(5));
    throw qbb::ValidationError("unknown generator \"" + gen +
                               "\" (expected zero, ones, one[:x], random or bits:...)");
    (void)cfg;
}

qbb::CombinerSpec make_combiner(const std::string& name) {
    if (name == "AND" || name == "and") return qbb::CombinerSpec::and_combiner();
    if (name == "OR" || name == "or") return qbb::CombinerSpec::or_combiner();
    if (name == "XOR" || name == "xor") return qbb::CombinerSpec::xor_combiner();
    if (name.size() == 4) {
        qbb::CombinerSpec spec{{0, 0, 0, 0}};
        for (int i = 0; i < 4; ++i) {
            if (name[i] != '0' && name[i] != '1')
                throw qbb::ValidationError("combiner table must be 4 bits of 0/1");
            spec.table[i] = static_cast<std::uint8_t>(name[i] - '0');
        }
        return spec;
    }
    throw qbb::ValidationError("unknown combiner \"" + name +
                               "\" (expected AND, OR, XOR or a 4-bit table)");
}

std::string echo_params(const nlohmann::json& j) { return j.dump(); }

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void run_algo(const Config& cfg, qbb::SweepResult& sweep) {
    for (int n : cfg.ns) {
        const auto start = Clock::now();
        const qbb::OracleTable f =
            make_oracle(cfg, cfg.oracle_path, cfg.gen, n, cfg.seed);
        qbb::SweepRow row;
        row.n = n;
        if (cfg.algo == "dj") {
            const qbb::DeciderResult r = qbb::deutsch_jozsa(f);
            row.id = "dj/n=" + std::to_string(n);
            row.params = echo_params({{"algo", "dj"}, {"n", n}, {"gen", cfg.gen}});
            row.answer = r.answer;
            row.queries = r.queries;
            row.success_prob = r.success_probability;
        } else if (cfg.algo == "or") {
            const int k = cfg.ks.empty() ? 3 : cfg.ks[0];
            const qbb::DeciderResult r = qbb::or_decider(f, k);
            row.id = "or/n=" + std::to_string(n);
            row.params = echo_params(
                {{"algo", "or"}, {"n", n}, {"k", k}, {"gen", cfg.gen}});
            row.answer = r.answer;
            row.queries = r.queries;
            row.success_prob = r.success_probability;
            row.extra["cost_constant"] = r.cost_constant;
        } else if (cfg.algo == "sigma2" || cfg.algo == "sigmad") {
            qbb::ApproxParams params;
            params.n = n;
            params.epsilon = cfg.epsilon;
            params.cap = cfg.cap;
            if (cfg.algo == "sigma2") {
                const int m = cfg.widths.size() == 2 ? cfg.widths[1] : n / 2;
                params.widths = {n - m, m};
                params.ks = {qbb::kSigma2OuterK, qbb::kSigma2InnerK};
            } else if (cfg.delta > 0.0) {
                params = qbb::double_exp_params(
                    n, static_cast<int>(cfg.widths.empty() ? 2 : cfg.widths.size()),
                    cfg.delta);
                params.cap = cfg.cap;
                if (!cfg.widths.empty()) params.widths = cfg.widths;
            } else {
                params.widths = cfg.widths;
                params.ks.assign(params.widths.size(), qbb::kSigma2InnerK);
                if (!params.ks.empty()) params.ks[0] = qbb::kSigma2OuterK;
            }
            if (!cfg.ks.empty()) params.ks = cfg.ks;
            qbb::SigmaStats stats;
            const qbb::DeciderResult r = qbb::sigma_d_eval(f, params, &stats);
            row.id = cfg.algo + "/n=" + std::to_string(n);
            row.params = echo_params({{"algo", cfg.algo},
                                      {"n", n},
                                      {"widths", params.widths},
                                      {"ks", params.ks},
                                      {"epsilon", params.epsilon},
                                      {"gen", cfg.gen}});
            row.answer = r.answer;
            row.queries = r.queries;
            row.success_prob = r.success_probability;
            double beta = 0.0;
            for (double b : stats.level_beta_max) beta = std::max(beta, b);
            row.extra["beta_max"] = beta;
            row.extra["predicted_queries"] =
                static_cast<double>(stats.predicted_queries);
        } else {
            throw qbb::ValidationError("unknown algorithm \"" + cfg.algo +
                                       "\" (expected dj, or, sigma2 or sigmad)");
        }
        row.wall_time = seconds_since(start);
        sweep.rows.push_back(std::move(row));
    }
}

void run_protocol_cmd(const Config& cfg, qbb::SweepResult& sweep) {
    for (int n : cfg.ns) {
        const auto start = Clock::now();
        const qbb::OracleTable g =
            make_oracle(cfg, cfg.oracle_path, cfg.gen, n, cfg.seed);
        const qbb::OracleTable h = cfg.gen_b == "same" && cfg.oracle_b_path.empty()
                                       ? g
                                       : make_oracle(cfg, cfg.oracle_b_path, cfg.gen_b,
                                                     n, cfg.seed + 1);
        qbb::ProtocolResult r;
        nlohmann::json params = {{"protocol", cfg.protocol},
                                 {"n", n},
                                 {"gen", cfg.gen},
                                 {"gen_b", cfg.gen_b}};
        if (cfg.protocol == "disj") {
            const int k = cfg.ks.empty() ? 3 : cfg.ks[0];
            r = qbb::disj_protocol(g, h, k, cfg.cap);
            params["k"] = k;
        } else if (cfg.protocol == "eqprime") {
            r = qbb::eqprime_protocol(g, h, cfg.cap);
        } else if (cfg.protocol == "ac0") {
            if (cfg.widths.empty())
                throw qbb::ValidationError("--widths is required for the ac0 protocol");
            r = qbb::ac0_protocol(cfg.widths, make_combiner(cfg.combiner), g, h,
                                  cfg.ks, cfg.cap);
            params["widths"] = cfg.widths;
            params["combiner"] = cfg.combiner;
        } else {
            throw qbb::ValidationError("unknown protocol \"" + cfg.protocol +
                                       "\" (expected disj, eqprime or ac0)");
        }
        if (!r.one_way &&
            r.transcript.total_qubits != r.t * (2 * std::int64_t{n} + 4))
            throw qbb::InternalError("transcript total broke the t(2n+4) identity");
        qbb::SweepRow row;
        row.id = cfg.protocol + "/n=" + std::to_string(n);
        row.n = n;
        row.params = echo_params(params);
        row.answer = r.answer;
        row.queries = r.t;
        row.comm_qubits = r.transcript.total_qubits;
        row.success_prob = r.success_probability;
        row.extra["one_way"] = r.one_way ? 1.0 : 0.0;
        row.wall_time = seconds_since(start);
        sweep.rows.push_back(std::move(row));
    }
}

void run_rank(const Config& cfg, qbb::SweepResult& sweep) {
    const qbb::CommPredicate predicate = qbb::parse_predicate(cfg.rank);
    for (int n : cfg.ns) {
        const auto start = Clock::now();
        const qbb::CommMatrix m = qbb::CommMatrix::build(predicate, n, cfg.allow_large);
        if (!cfg.matrix_out.empty())
            m.save(cfg.matrix_out + (cfg.ns.size() > 1 ? "." + std::to_string(n) : ""));
        const std::uint64_t rank = qbb::exact_rank(m);
        qbb::SweepRow row;
        row.id = "rank/" + m.name() + "/n=" + std::to_string(n);
        row.n = n;
        row.params = echo_params({{"rank", m.name()}, {"n", n}});
        row.answer = 0;
        row.extra["rank"] = static_cast<double>(rank);
        row.extra["side"] = static_cast<double>(m.side());
        row.wall_time = seconds_since(start);
        sweep.rows.push_back(std::move(row));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator for black-box algorithms and the protocols "
                 "derived from them"};
    Config cfg;
    auto* algo = app.add_option("--algo", cfg.algo, "dj | or | sigma2 | sigmad");
    auto* prot = app.add_option("--protocol", cfg.protocol, "disj | eqprime | ac0");
    auto* rank = app.add_option("--rank", cfg.rank, "disj | eq | ip | disjointness");
    algo->excludes(prot)->excludes(rank);
    prot->excludes(rank);
    app.add_option("--n", cfg.ns, "input sizes (one row each)")->required();
    app.add_option("--widths", cfg.widths, "quantifier widths, outer first");
    app.add_option("--k", cfg.ks, "repetition counts, outer first");
    app.add_option("--epsilon", cfg.epsilon, "target accuracy in (0,1)");
    app.add_option("--delta", cfg.delta,
                   "double-exponential-error exponent (sigmad only)");
    app.add_option("--oracle", cfg.oracle_path, "oracle JSON file (Alice's for protocols)");
    app.add_option("--oracle-b", cfg.oracle_b_path, "Bob's oracle JSON file");
    app.add_option("--gen", cfg.gen, "zero | ones | one[:x] | random | bits:...");
    app.add_option("--gen-b", cfg.gen_b, "Bob's generator (also: same)");
    app.add_option("--combiner", cfg.combiner, "AND | OR | XOR | 4-bit table");
    app.add_option("--seed", cfg.seed, "generator seed");
    app.add_option("--out", cfg.out, "output path (- for stdout)");
    app.add_option("--format", cfg.format, "json | csv");
    app.add_option("--cap", cfg.cap, "register cap in qubits");
    app.add_flag("--allow-large", cfg.allow_large, "permit n = 4 rank matrices");
    app.add_option("--matrix-out", cfg.matrix_out, "also export the 0/1 matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        qbb::SweepResult sweep;
        sweep.seed = cfg.seed;
        sweep.date = qbb::current_date_utc();
        std::string cmd;
        for (int i = 0; i < argc; ++i) cmd += std::string(i ? " " : "") + argv[i];
        sweep.command = cmd;
        if (!cfg.algo.empty())
            run_algo(cfg, sweep);
        else if (!cfg.protocol.empty())
            run_protocol_cmd(cfg, sweep);
        else if (!cfg.rank.empty())
            run_rank(cfg, sweep);
        else
            throw qbb::ValidationError("pick one of --algo, --protocol or --rank");
        sweep.write(cfg.out, cfg.format);
        return 0;
    } catch (const qbb::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const qbb::ProtocolError& e) {
        std::fprintf(stderr, "protocol error: %s\n", e.what());
        return 2;
    } catch (const qbb::ResourceError& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
}
