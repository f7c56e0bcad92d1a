#include "qbb/nested.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qbb/errors.hpp"

namespace qbb {

namespace {

std::vector<int> iota_vec(int first, int count) {
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), first);
    return v;
}

std::string workspace_tally(int controls, int m, int runs, int inner_ws) {
    std::ostringstream os;
    os << "controls " << controls << " + answer 1 + search " << runs << "x" << m
       << " + records " << runs << " + phase ancilla 1 + inner workspace " << inner_ws;
    return os.str();
}

void check_register(int qubits, int cap, const std::string& tally) {
    if (qubits > cap)
        throw ResourceError("register of " + std::to_string(qubits) +
                            " qubits exceeds the cap of " + std::to_string(cap) +
                            " (" + tally + ")");
}

}  // namespace

void TableGGate::apply(StateVector& state, int answer, std::span<const int> inputs,
                       std::span<const int> workspace, QueryCounter& counter) const {
    if (!workspace.empty())
        throw ValidationError("table gate takes no workspace qubits");
    apply_f_gate(state, table_, inputs, answer, counter);
}

std::shared_ptr<const GGate> TableGGate::restrict_inputs(std::uint64_t prefix,
                                                         int count) const {
    return std::make_shared<TableGGate>(table_.restrict_prefix(prefix, count));
}

UnitaryDecider::UnitaryDecider(std::shared_ptr<const GGate> inner, int m,
                               QuantSense sense, RunSchedule schedule)
    : inner_(std::move(inner)), m_(m), sense_(sense), schedule_(std::move(schedule)) {
    if (!inner_) throw ValidationError("decider needs an inner gate");
    if (m_ < 0 || m_ > inner_->input_bits())
        throw ValidationError("search width must lie within the inner gate's arity");
    if (schedule_.lengths.empty())
        throw ValidationError("run schedule must contain at least one run");
    for (int j : schedule_.lengths)
        if (j < 0) throw ValidationError("negative run length");
    controls_ = inner_->input_bits() - m_;
}

int UnitaryDecider::workspace_bits() const {
    const int R = runs();
    return 1 + R * m_ + R + 1 + inner_->workspace_bits();
}

std::int64_t UnitaryDecider::inner_calls_per_stage() const {
    std::int64_t total = 0;
    for (int j : schedule_.lengths) total += j + 1;
    return total;
}

void UnitaryDecider::set_measured_errors(std::vector<double> branch_error) {
    if (branch_error.size() != (std::uint64_t{1} << controls_))
        throw ValidationError("one error entry per control setting required");
    branch_error_ = std::move(branch_error);
    double worst = 0.0;
    for (double e : branch_error_) worst = std::max(worst, e);
    beta_max_ = std::sqrt(worst);
}

void UnitaryDecider::apply_stage(StateVector& state, std::span<const int> inputs,
                                 std::span<const int> block, bool adjoint,
                                 QueryCounter& counter) const {
    if (static_cast<int>(inputs.size()) != controls_)
        throw ValidationError("control wire count must match the decider");
    if (static_cast<int>(block.size()) != workspace_bits())
        throw ValidationError("workspace block size must match the decider layout");
    const int R = runs();
    const int ans = block[0];
    const int rec0 = 1 + R * m_;
    const int anc = block[rec0 + R];
    const std::span<const int> iws = block.subspan(2 + R * m_ + R);

    std::vector<std::vector<int>> run_regs(R);
    std::vector<std::vector<int>> full_in(R);
    std::vector<int> recs(R);
    for (int r = 0; r < R; ++r) {
        run_regs[r].assign(block.begin() + 1 + r * m_, block.begin() + 1 + (r + 1) * m_);
        full_in[r].assign(inputs.begin(), inputs.end());
        full_in[r].insert(full_in[r].end(), run_regs[r].begin(), run_regs[r].end());
        recs[r] = block[rec0 + r];
    }

    // G as a sequence of self-inverse blocks; G† runs the same blocks in
    // reverse order.
    std::vector<std::function<void()>> stages;
    for (int r = 0; r < R; ++r)
        stages.push_back([&, r] {
            for (int q : run_regs[r]) state.apply_h(q);
        });
    for (int r = 0; r < R; ++r) {
        for (int it = 0; it < schedule_.lengths[r]; ++it) {
            stages.push_back([&, r] {
                state.apply_x(anc);
                state.apply_h(anc);
                inner_->apply(state, anc, full_in[r], iws, counter);
                state.apply_h(anc);
                state.apply_x(anc);
            });
            stages.push_back([&, r] { state.invert_about_mean(run_regs[r]); });
        }
    }
    for (int r = 0; r < R; ++r)
        stages.push_back([&, r] {
            inner_->apply(state, recs[r], full_in[r], iws, counter);
            if (sense_ == QuantSense::ForAll) state.apply_x(recs[r]);
        });
    stages.push_back([&] {
        const std::vector<int> zeros(R, 0);
        state.apply_mcx(recs, zeros, ans);
        if (sense_ == QuantSense::Exists) state.apply_x(ans);
    });

    if (!adjoint)
        for (auto& s : stages) s();
    else
        for (auto it = stages.rbegin(); it != stages.rend(); ++it) (*it)();
}

namespace {

// Exact miss probability of one ladder pass over the target set, computed from
// independent per-run simulations (valid because an exact inner gate leaves
// no residue coupling the runs).
double factorized_miss(const OracleTable& slice, const std::vector<std::uint64_t>& targets,
                       const RunSchedule& schedule, int cap) {
    const int m = slice.n();
    const std::vector<int> in = iota_vec(0, m);
    double miss = 1.0;
    for (int j : schedule.lengths) {
        StateVector s(m + 1, cap);
        for (int q : in) s.apply_h(q);
        QueryCounter junk;
        grover_iterate(s, slice, j, junk);
        double p = 0.0;
        for (std::uint64_t y : targets) p += s.pattern_probability(in, y);
        miss *= 1.0 - p;
    }
    return miss;
}

}  // namespace

UnitaryDecider build_unitary_decider(std::shared_ptr<const GGate> inner, int m, int k,
                                     QuantSense sense, const OracleTable& truth,
                                     int cap) {
    if (k < 1) throw ValidationError("repetition count must be positive");
    UnitaryDecider decider(std::move(inner), m, sense, repeated_ladder(m, k));
    if (truth.n() != decider.controls())
        throw ValidationError("truth table arity must match the control wire count");

    const int controls = decider.controls();
    const std::uint64_t branches = std::uint64_t{1} << controls;
    std::vector<double> err(branches, 0.0);

    if (const OracleTable* table = decider.inner().table()) {
        // Exact inner gate: runs are tensor-independent per control setting, so
        // beta^2(x) is the product of per-run miss probabilities.
        for (std::uint64_t x = 0; x < branches; ++x) {
            const OracleTable slice = table->restrict_prefix(x, controls);
            std::vector<std::uint64_t> targets;
            for (std::uint64_t y = 0; y < slice.size(); ++y) {
                const int v = slice.value(y);
                if ((sense == QuantSense::Exists && v == 1) ||
                    (sense == QuantSense::ForAll && v == 0))
                    targets.push_back(y);
            }
            const int expected = sense == QuantSense::Exists ? !targets.empty()
                                                             : targets.empty();
            if (truth.value(x) != expected)
                throw ValidationError(
                    "truth table disagrees with the quantifier over the inner table");
            err[x] = targets.empty()
                         ? 0.0
                         : factorized_miss(slice, targets, decider.schedule(), cap);
        }
    } else {
        // Approximate inner gate: the shared inner workspace couples the runs,
        // so each control branch is simulated coherently in full.
        for (std::uint64_t x = 0; x < branches; ++x) {
            UnitaryDecider branch(decider.inner().restrict_inputs(x, controls), m,
                                  sense, decider.schedule());
            const int q = branch.workspace_bits();
            check_register(q, cap,
                           workspace_tally(0, m, branch.runs(),
                                           branch.inner().workspace_bits()));
            StateVector s(q, cap);
            QueryCounter junk;
            branch.apply_stage(s, {}, iota_vec(0, q), false, junk);
            const int ansq[] = {0};
            const double p1 = s.pattern_probability(ansq, 1);
            err[x] = truth.value(x) ? 1.0 - p1 : p1;
        }
    }
    decider.set_measured_errors(std::move(err));
    return decider;
}

void ApproxGGate::apply(StateVector& state, int answer, std::span<const int> inputs,
                        std::span<const int> workspace, QueryCounter& counter) const {
    decider_.apply_stage(state, inputs, workspace, false, counter);
    state.apply_cnot(workspace[0], answer);
    decider_.apply_stage(state, inputs, workspace, true, counter);
}

std::shared_ptr<const GGate> ApproxGGate::restrict_inputs(std::uint64_t prefix,
                                                          int count) const {
    if (count < 0 || count > decider_.controls())
        throw ValidationError("prefix length out of range");
    UnitaryDecider restricted(decider_.inner().restrict_inputs(prefix, count),
                              decider_.m(), decider_.sense(), decider_.schedule());
    const int rest = decider_.controls() - count;
    std::vector<double> err(std::uint64_t{1} << rest);
    for (std::uint64_t x = 0; x < err.size(); ++x)
        err[x] = decider_.branch_error()[(prefix << rest) | x];
    restricted.set_measured_errors(std::move(err));
    return std::make_shared<ApproxGGate>(std::move(restricted));
}

std::shared_ptr<const ApproxGGate> approx_g_gate(UnitaryDecider decider) {
    if (decider.branch_error().empty())
        throw ValidationError("decider carries no measured error record");
    return std::make_shared<ApproxGGate>(std::move(decider));
}

GateDistanceReport verify_gate_distance(const ApproxGGate& gate,
                                        const OracleTable& ideal, int cap,
                                        int full_sim_limit) {
    const int nc = gate.input_bits();
    const int ws = gate.workspace_bits();
    if (ideal.n() != nc)
        throw ValidationError("ideal table arity must match the gate");
    GateDistanceReport rep;
    const int q = 1 + nc + ws;
    if (q <= std::min(cap, full_sim_limit)) {
        const std::vector<int> in = iota_vec(1, nc);
        const std::vector<int> wsq = iota_vec(1 + nc, ws);
        for (int z = 0; z < 2; ++z) {
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << nc); ++x) {
                const std::uint64_t start =
                    (static_cast<std::uint64_t>(z) << (q - 1)) | (x << ws);
                StateVector s(q, start, cap);
                QueryCounter junk;
                gate.apply(s, 0, in, wsq, junk);
                const std::uint64_t target =
                    (static_cast<std::uint64_t>(z ^ ideal.value(x)) << (q - 1)) |
                    (x << ws);
                const double norm2 = kernels::norm_sq(s.amplitudes());
                const double d2 =
                    std::max(0.0, norm2 - 2.0 * s.amplitude(target).real() + 1.0);
                rep.max_distance = std::max(rep.max_distance, std::sqrt(d2));
                rep.max_norm_error =
                    std::max(rep.max_norm_error, std::abs(std::sqrt(norm2) - 1.0));
            }
        }
    } else {
        // Register too large to hold V's output; fall back on the exact
        // per-branch identity: distance at basis input x is sqrt(2)*beta(x).
        rep.exact_simulation = false;
        for (double e : gate.decider().branch_error())
            rep.max_distance = std::max(rep.max_distance, std::sqrt(2.0 * e));
    }
    rep.superposition_bound =
        std::sqrt(std::pow(2.0, nc + 1)) * rep.max_distance;
    return rep;
}

int choose_k(int n, int m, double epsilon) {
    if (m < 0 || m > n) throw ValidationError("need 0 <= m <= n");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1)");
    const double bound = 2.0 * (n - m) + 2.0 * std::log2(2.0 / epsilon);
    const int k = static_cast<int>(std::ceil(bound - 1e-12));
    return std::max(k, 1);
}

void ApproxParams::validate() const {
    if (n < 0) throw ValidationError("negative input size");
    if (widths.empty()) throw ValidationError("at least one quantifier level required");
    if (ks.size() != widths.size())
        throw ValidationError("one repetition count per level required");
    int total = 0;
    for (int w : widths) {
        if (w < 0) throw ValidationError("quantifier widths must be nonnegative");
        total += w;
    }
    if (total != n) throw ValidationError("quantifier widths must sum to n");
    for (int k : ks)
        if (k < 1) throw ValidationError("repetition counts must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1)");
    if (delta < 0.0) throw ValidationError("delta must be nonnegative");
    if (cap < 1) throw ValidationError("register cap must be positive");
}

std::string ApproxParams::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["widths"] = widths;
    j["ks"] = ks;
    j["epsilon"] = epsilon;
    j["delta"] = delta;
    return j.dump();
}

ApproxParams ApproxParams::parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ApproxParams p;
    if (!j.contains("n") || !j.contains("widths") || !j.contains("ks"))
        throw ValidationError("parameter JSON needs fields n, widths and ks");
    p.n = j["n"].get<int>();
    p.widths = j["widths"].get<std::vector<int>>();
    p.ks = j["ks"].get<std::vector<int>>();
    if (j.contains("epsilon")) p.epsilon = j["epsilon"].get<double>();
    if (j.contains("delta")) p.delta = j["delta"].get<double>();
    if (j.contains("cap")) p.cap = j["cap"].get<int>();
    p.validate();
    return p;
}

ApproxParams ApproxParams::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open parameter file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void ApproxParams::save_json(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write parameter file " + path);
    out << to_json() << "\n";
}

ApproxParams double_exp_params(int n, int d, double delta, int k_cap) {
    if (n < 1 || d < 1) throw ValidationError("need n >= 1 and d >= 1");
    if (delta <= 0.0) throw ValidationError("delta must be positive");
    const double exponent = static_cast<double>(n) / (delta * d);
    const double k_real = std::pow(2.0, exponent);
    if (k_real > static_cast<double>(k_cap))
        throw ResourceError(
            "repetition count 2^(n/(delta*d)) = " + std::to_string(k_real) +
            " exceeds the cap of " + std::to_string(k_cap) +
            "; this parameter family grows double-exponentially and is only "
            "runnable at toy sizes");
    ApproxParams p;
    p.n = n;
    p.delta = delta;
    p.widths.assign(d, n / d);
    for (int i = 0; i < n % d; ++i) p.widths[i] += 1;
    p.ks.assign(d, static_cast<int>(std::ceil(k_real - 1e-9)));
    p.epsilon = std::pow(2.0, -std::pow(2.0, exponent - 1.0));
    return p;
}

DeciderResult measured_decider(const GGate& gate, int k, const RunSchedule& ladder,
                               QuantSense sense, int truth_value, int cap,
                               const GGate* analysis) {
    if (k < 1) throw ValidationError("repetition count must be positive");
    const GGate& offline = analysis ? *analysis : gate;
    if (offline.input_bits() != gate.input_bits())
        throw ValidationError("analysis twin must match the gate's arity");
    const int mt = gate.input_bits();
    const int ws = gate.workspace_bits();
    DeciderResult result;
    QueryCounter counter;
    const int ansq[] = {0};

    if (mt == 0) {
        // Nothing to search over: one application of the gate decides.
        const int q = 1 + ws;
        check_register(q, cap, "answer 1 + gate workspace " + std::to_string(ws));
        StateVector s(q, cap);
        gate.apply(s, 0, {}, iota_vec(1, ws), counter);
        const double p1 = s.pattern_probability(ansq, 1);
        result.output_one_probability = p1;
        result.answer = p1 >= 0.5 ? 1 : 0;
        result.queries = counter.count;
        result.success_probability = truth_value ? p1 : 1.0 - p1;
        result.cost_constant = static_cast<double>(result.queries) / k;
        return result;
    }

    // Exact confirmation probability per candidate, from the offline twin.
    std::vector<double> confirm(std::uint64_t{1} << mt);
    {
        const int ows = offline.workspace_bits();
        const int q = 1 + mt + ows;
        check_register(q, cap,
                       "answer 1 + inputs " + std::to_string(mt) +
                           " + gate workspace " + std::to_string(ows));
        const std::vector<int> in = iota_vec(1, mt);
        const std::vector<int> wsq = iota_vec(1 + mt, ows);
        for (std::uint64_t y = 0; y < confirm.size(); ++y) {
            StateVector s(q, y << ows, cap);
            QueryCounter junk;
            offline.apply(s, 0, in, wsq, junk);
            const double p1 = s.pattern_probability(ansq, 1);
            confirm[y] = sense == QuantSense::Exists ? p1 : 1.0 - p1;
        }
    }

    const int q = mt + 1 + ws;
    check_register(q, cap,
                   "search " + std::to_string(mt) + " + phase ancilla 1 + gate workspace " +
                       std::to_string(ws));
    const std::vector<int> search = iota_vec(0, mt);
    const int anc = mt;
    const std::vector<int> wsq = iota_vec(mt + 1, ws);

    double none_found = 1.0;
    for (int rep = 0; rep < k; ++rep) {
        for (int j : ladder.lengths) {
            StateVector s(q, cap);
            for (int sq : search) s.apply_h(sq);
            for (int it = 0; it < j; ++it) {
                s.apply_x(anc);
                s.apply_h(anc);
                gate.apply(s, anc, search, wsq, counter);
                s.apply_h(anc);
                s.apply_x(anc);
                s.invert_about_mean(search);
            }
            double q_run = 0.0;
            for (const auto& [bits, prob] : s.output_distribution(search)) {
                const std::uint64_t y = std::stoull(bits, nullptr, 2);
                q_run += prob * confirm[y];
            }
            counter.add(gate.queries_per_call());  // candidate confirmation
            none_found *= 1.0 - q_run;
        }
    }

    const double out1 = sense == QuantSense::Exists ? 1.0 - none_found : none_found;
    result.output_one_probability = out1;
    result.answer = out1 >= 0.5 ? 1 : 0;
    result.queries = counter.count;
    result.success_probability = truth_value ? out1 : 1.0 - out1;
    result.cost_constant = static_cast<double>(result.queries) /
                           (k * std::sqrt(std::pow(2.0, mt)));
    return result;
}

namespace {

// Truth tables of the level functions: tables[i] is the level-(i+1) function
// over the first m_1 + ... + m_i input bits; tables[0] is the scalar answer.
std::vector<OracleTable> level_truths(const OracleTable& f, std::span<const int> widths) {
    const int d = static_cast<int>(widths.size());
    std::vector<OracleTable> tables(d + 1, OracleTable(0, {0}));
    tables[d] = f;
    int prefix_bits = f.n();
    for (int i = d; i >= 1; --i) {
        const int mi = widths[i - 1];
        prefix_bits -= mi;
        const bool is_or = i % 2 == 1;
        std::vector<std::uint8_t> bits(std::uint64_t{1} << prefix_bits);
        for (std::uint64_t p = 0; p < bits.size(); ++p) {
            int acc = is_or ? 0 : 1;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << mi); ++y) {
                const int v = tables[i].value((p << mi) | y);
                if (is_or)
                    acc |= v;
                else
                    acc &= v;
            }
            bits[p] = static_cast<std::uint8_t>(acc);
        }
        tables[i - 1] = OracleTable(prefix_bits, std::move(bits));
    }
    return tables;
}

}  // namespace

SigmaGateChain build_sigma_gate(const OracleTable& f, const ApproxParams& params,
                                std::shared_ptr<const GGate> leaf) {
    params.validate();
    if (f.n() != params.n)
        throw ValidationError("oracle arity must match the parameter block");
    if (!leaf) leaf = std::make_shared<TableGGate>(f);
    if (leaf->input_bits() != params.n)
        throw ValidationError("leaf gate arity must match the parameter block");

    const int d = params.depth();
    const auto truths = level_truths(f, params.widths);
    SigmaGateChain chain;
    chain.truth_value = truths[0].value(0);
    if (chain.truth_value != eval_sigma(f, params.widths))
        throw InternalError("level-truth recursion disagrees with the direct evaluator");

    std::shared_ptr<const GGate> gate = std::move(leaf);
    for (int i = d; i >= 2; --i) {
        const int mi = params.widths[i - 1];
        if (mi == 0) {
            chain.level_beta_max.push_back(0.0);
            continue;
        }
        const QuantSense sense = i % 2 == 1 ? QuantSense::Exists : QuantSense::ForAll;
        UnitaryDecider decider = build_unitary_decider(gate, mi, params.ks[i - 1],
                                                       sense, truths[i - 1], params.cap);
        chain.level_beta_max.push_back(decider.beta_max());
        gate = approx_g_gate(std::move(decider));
    }
    chain.top = std::move(gate);
    return chain;
}

DeciderResult sigma_d_eval(const OracleTable& f, const ApproxParams& params,
                           SigmaStats* stats) {
    params.validate();
    if (f.n() != params.n)
        throw ValidationError("oracle arity must match the parameter block");
    if (stats) *stats = SigmaStats{};
    if (params.depth() == 1) {
        if (stats) stats->predicted_queries = sigma_predicted_queries(params);
        return or_decider(f, params.ks[0]);
    }
    SigmaGateChain chain = build_sigma_gate(f, params);
    if (stats) {
        stats->level_beta_max = chain.level_beta_max;
        stats->top_gate_workspace = chain.top->workspace_bits();
        stats->predicted_queries = sigma_predicted_queries(params);
    }
    const int m_top = params.widths[0];
    return measured_decider(*chain.top, params.ks[0], ladder_schedule(m_top),
                            QuantSense::Exists, chain.truth_value, params.cap);
}

DeciderResult pi_d_eval(const OracleTable& f, const ApproxParams& params,
                        SigmaStats* stats) {
    DeciderResult r = sigma_d_eval(f.negated(), params, stats);
    r.answer = 1 - r.answer;
    r.output_one_probability = 1.0 - r.output_one_probability;
    return r;
}

DeciderResult sigma2_eval(const OracleTable& f, int m, double epsilon, int outer_k,
                          int inner_k, int cap, SigmaStats* stats) {
    if (m < 0 || m > f.n())
        throw ValidationError("inner width must lie within the oracle arity");
    ApproxParams params;
    params.n = f.n();
    params.widths = {f.n() - m, m};
    params.ks = {outer_k, inner_k};
    params.epsilon = epsilon;
    params.cap = cap;
    return sigma_d_eval(f, params, stats);
}

std::int64_t sigma_predicted_queries(const ApproxParams& params) {
    params.validate();
    const auto ladder_weight = [](int m) {
        std::int64_t w = 0;
        for (int j : ladder_schedule(m).lengths) w += j + 1;
        return w;
    };
    std::int64_t per_call = 1;
    for (int i = params.depth(); i >= 2; --i) {
        const int mi = params.widths[i - 1];
        if (mi == 0) continue;
        per_call *= 2 * params.ks[i - 1] * ladder_weight(mi);
    }
    if (params.widths[0] == 0 && params.depth() > 1) return per_call;
    return params.ks[0] * ladder_weight(params.widths[0]) * per_call;
}

}  // namespace qbb
