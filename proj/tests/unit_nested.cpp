#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qbb/errors.hpp"
#include "qbb/nested.hpp"

using namespace qbb;

namespace {

ApproxParams make_params(int n, std::vector<int> widths, std::vector<int> ks) {
    ApproxParams p;
    p.n = n;
    p.widths = std::move(widths);
    p.ks = std::move(ks);
    return p;
}

}  // namespace

TEST_CASE("choose_k matches hand-computed values") {
    // k = ceil(2(n-m) + 2 log2(2/eps))
    CHECK(choose_k(2, 1, 1.0 / 12) == 12);  // 2 + 2*log2(24) = 11.17
    CHECK(choose_k(1, 1, 0.5) == 4);        // 2*log2(4)
    CHECK(choose_k(3, 3, 1.0 / 12) == 10);  // 2*log2(24) = 9.17
    CHECK(choose_k(4, 4, 0.5) == 4);
    CHECK(choose_k(5, 1, 0.5) == 12);       // 8 + 4
    CHECK_THROWS_AS(choose_k(1, 2, 0.5), ValidationError);
    CHECK_THROWS_AS(choose_k(2, 1, 0.0), ValidationError);
    CHECK_THROWS_AS(choose_k(2, 1, 1.0), ValidationError);
}

TEST_CASE("double-exponential parameter family") {
    ApproxParams p = double_exp_params(4, 2, 1.0);
    CHECK(p.widths == std::vector<int>{2, 2});
    CHECK(p.ks == std::vector<int>{4, 4});
    CHECK(p.epsilon == doctest::Approx(0.25));  // 2^-(2^(2-1))
    p.validate();

    ApproxParams q = double_exp_params(3, 3, 1.0);
    CHECK(q.widths == std::vector<int>{1, 1, 1});
    CHECK(q.ks == std::vector<int>{2, 2, 2});
    CHECK(q.epsilon == doctest::Approx(0.5));

    ApproxParams r = double_exp_params(5, 2, 1.0);
    CHECK(r.widths == std::vector<int>{3, 2});
    CHECK(std::accumulate(r.widths.begin(), r.widths.end(), 0) == 5);

    CHECK_THROWS_AS(double_exp_params(40, 2, 1.0), ResourceError);
    CHECK_THROWS_AS(double_exp_params(3, 2, 0.0), ValidationError);
}

TEST_CASE("parameter block validation and json round trip") {
    ApproxParams p = make_params(3, {1, 2}, {3, 2});
    p.epsilon = 0.125;
    ApproxParams q = ApproxParams::parse_json(p.to_json());
    CHECK(q.n == 3);
    CHECK(q.widths == p.widths);
    CHECK(q.ks == p.ks);
    CHECK(q.epsilon == doctest::Approx(0.125));

    CHECK_THROWS_AS(make_params(3, {1, 1}, {1, 1}).validate(), ValidationError);
    CHECK_THROWS_AS(make_params(3, {1, 2}, {1}).validate(), ValidationError);
    CHECK_THROWS_AS(make_params(3, {1, 2}, {1, 0}).validate(), ValidationError);
    CHECK_THROWS_AS(ApproxParams::parse_json("{\"n\": 2}"), ValidationError);
}

TEST_CASE("approximate gate is a unitary involution") {
    OracleTable f = OracleTable::from_bitstring(2, "0110");
    SigmaGateChain chain = build_sigma_gate(f, make_params(2, {1, 1}, {3, 2}));
    const auto& gate = *chain.top;
    const int q = 1 + gate.input_bits() + gate.workspace_bits();
    std::vector<int> in(gate.input_bits());
    std::iota(in.begin(), in.end(), 1);
    std::vector<int> ws(gate.workspace_bits());
    std::iota(ws.begin(), ws.end(), 1 + gate.input_bits());

    StateVector s(q);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist;
    double norm2 = 0.0;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        s.amplitude(i) = cplx{dist(rng), dist(rng)};
        norm2 += std::norm(s.amplitude(i));
    }
    for (std::uint64_t i = 0; i < s.dim(); ++i) s.amplitude(i) /= std::sqrt(norm2);
    StateVector start = s;
    QueryCounter counter;
    gate.apply(s, 0, in, ws, counter);
    CHECK(std::abs(s.norm() - 1.0) < 1e-9);  // unitary
    gate.apply(s, 0, in, ws, counter);
    CHECK(euclidean_distance(s, start) < 1e-9);  // involution
    CHECK(counter.count == 2 * gate.queries_per_call());
}

TEST_CASE("gate distance report obeys the beta law") {
    OracleTable f = OracleTable::from_bitstring(2, "0111");
    SigmaGateChain chain = build_sigma_gate(f, make_params(2, {1, 1}, {3, 2}));
    const auto* gate = dynamic_cast<const ApproxGGate*>(chain.top.get());
    REQUIRE(gate != nullptr);

    // Ideal level-1 function: AND over the trailing bit.
    std::vector<std::uint8_t> ideal_bits(2);
    for (std::uint64_t x = 0; x < 2; ++x)
        ideal_bits[x] = std::uint8_t(f.value(x << 1) & f.value((x << 1) | 1));
    OracleTable ideal(1, std::move(ideal_bits));

    GateDistanceReport rep = verify_gate_distance(*gate, ideal);
    CHECK(rep.exact_simulation);
    CHECK(rep.max_norm_error < 1e-9);
    double beta_law = 0.0;
    for (double e : gate->decider().branch_error())
        beta_law = std::max(beta_law, std::sqrt(2.0 * e));
    CHECK(rep.max_distance == doctest::Approx(beta_law).epsilon(1e-9));
    CHECK(rep.superposition_bound ==
          doctest::Approx(std::sqrt(4.0) * rep.max_distance));

    // The analytic fallback reports the same distances without simulating.
    GateDistanceReport analytic = verify_gate_distance(*gate, ideal, 26, 4);
    CHECK_FALSE(analytic.exact_simulation);
    CHECK(analytic.max_distance == doctest::Approx(beta_law).epsilon(1e-12));
}

TEST_CASE("exact decisions leave the workspace clean") {
    // All inner slices constant, so every branch error is zero and V acts as
    // the ideal g-gate on the computational basis.
    OracleTable f = OracleTable::from_bitstring(2, "0011");  // f = x1
    SigmaGateChain chain = build_sigma_gate(f, make_params(2, {1, 1}, {2, 2}));
    const auto* gate = dynamic_cast<const ApproxGGate*>(chain.top.get());
    REQUIRE(gate != nullptr);
    CHECK(gate->beta_max() == doctest::Approx(0.0));

    const int ws = gate->workspace_bits();
    const int q = 2 + ws;
    for (int z = 0; z < 2; ++z) {
        for (std::uint64_t x = 0; x < 2; ++x) {
            StateVector s(q, (std::uint64_t(z) << (q - 1)) | (x << ws));
            QueryCounter counter;
            const std::vector<int> in{1};
            std::vector<int> wsq(ws);
            std::iota(wsq.begin(), wsq.end(), 2);
            gate->apply(s, 0, in, wsq, counter);
            const std::uint64_t want =
                (std::uint64_t(z ^ (x == 1)) << (q - 1)) | (x << ws);
            CHECK(std::abs(s.amplitude(want) - cplx{1.0}) < 1e-9);
        }
    }
}

TEST_CASE("restricting an approximate gate keeps its measured errors") {
    OracleTable f = OracleTable::random(3, 11);
    SigmaGateChain chain = build_sigma_gate(f, make_params(3, {2, 1}, {3, 2}));
    const auto* gate = dynamic_cast<const ApproxGGate*>(chain.top.get());
    REQUIRE(gate != nullptr);
    for (std::uint64_t prefix = 0; prefix < 2; ++prefix) {
        auto restricted = gate->restrict_inputs(prefix, 1);
        const auto* rg = dynamic_cast<const ApproxGGate*>(restricted.get());
        REQUIRE(rg != nullptr);
        CHECK(rg->input_bits() == 1);
        for (std::uint64_t x = 0; x < 2; ++x)
            CHECK(rg->decider().branch_error()[x] ==
                  doctest::Approx(gate->decider().branch_error()[(prefix << 1) | x]));
    }
}

TEST_CASE("two-level evaluator is exhaustively correct at n = 2") {
    const std::vector<int> widths{1, 1};
    for (std::uint64_t code = 0; code < 16; ++code) {
        std::vector<std::uint8_t> bits(4);
        for (int i = 0; i < 4; ++i) bits[i] = (code >> i) & 1;
        OracleTable f(2, bits);
        const int truth = eval_sigma(f, widths);
        SigmaStats stats;
        DeciderResult r = sigma2_eval(f, 1, 1.0 / 12, kSigma2OuterK, kSigma2InnerK,
                                      kDefaultQubitCap, &stats);
        CHECK(r.answer == truth);
        CHECK(r.success_probability >= 2.0 / 3);
        CHECK(r.queries == stats.predicted_queries);
    }
}

TEST_CASE("pi is the de morgan dual of sigma") {
    for (std::uint64_t code : std::vector<std::uint64_t>{0, 3, 6, 9, 13, 15}) {
        std::vector<std::uint8_t> bits(4);
        for (int i = 0; i < 4; ++i) bits[i] = (code >> i) & 1;
        OracleTable f(2, bits);
        ApproxParams p = make_params(2, {1, 1}, {3, 2});
        DeciderResult s = sigma_d_eval(f.negated(), p);
        DeciderResult r = pi_d_eval(f, p);
        CHECK(r.answer == 1 - s.answer);
        CHECK(r.output_one_probability ==
              doctest::Approx(1.0 - s.output_one_probability));
        CHECK(r.answer == eval_pi(f, p.widths));
    }
}

TEST_CASE("degenerate widths reduce to plain OR and AND") {
    OracleTable f = OracleTable::from_bitstring(2, "0100");
    // m = 0: the inner level vanishes; the result is the OR decider verbatim.
    DeciderResult inner0 = sigma2_eval(f, 0);
    DeciderResult plain = or_decider(f, kSigma2OuterK);
    CHECK(inner0.answer == plain.answer);
    CHECK(inner0.queries == plain.queries);
    CHECK(inner0.output_one_probability ==
          doctest::Approx(plain.output_one_probability));
    // m = n: the outer level vanishes; the answer is AND of the whole table.
    CHECK(sigma2_eval(f, 2).answer == 0);
    CHECK(sigma2_eval(OracleTable::constant(2, 1), 2).answer == 1);
    CHECK(sigma2_eval(OracleTable::constant(2, 1), 2).success_probability ==
          doctest::Approx(1.0));
}

TEST_CASE("depth-1 parameters delegate to the or decider") {
    OracleTable f = OracleTable::single_one(3, 2);
    SigmaStats stats;
    DeciderResult d1 = sigma_d_eval(f, make_params(3, {3}, {2}), &stats);
    DeciderResult ref = or_decider(f, 2);
    CHECK(d1.answer == ref.answer);
    CHECK(d1.queries == ref.queries);
    CHECK(d1.output_one_probability == doctest::Approx(ref.output_one_probability));
    CHECK(stats.predicted_queries == ref.queries);
}

TEST_CASE("inner repetitions tighten the level error monotonically") {
    OracleTable f = OracleTable::from_bitstring(2, "0111");
    double prev = 1.0;
    for (int inner_k = 1; inner_k <= 4; ++inner_k) {
        SigmaGateChain chain =
            build_sigma_gate(f, make_params(2, {1, 1}, {3, inner_k}));
        CHECK(chain.level_beta_max.back() <= prev + 1e-12);
        prev = chain.level_beta_max.back();
    }
    CHECK(prev < 0.1);
}

TEST_CASE("depth-3 chain with exact levels decides a 3-bit instance") {
    // f depends only on x1, so every inner slice is constant and each level's
    // gate is exact; the plumbing across three levels is what is under test.
    OracleTable f = OracleTable::from_bitstring(3, "00001111");
    ApproxParams p = make_params(3, {1, 1, 1}, {2, 1, 1});
    SigmaStats stats;
    DeciderResult r = sigma_d_eval(f, p, &stats);
    CHECK(r.answer == eval_sigma(f, p.widths));
    CHECK(r.answer == 1);
    CHECK(r.success_probability >= 0.9);
    CHECK(stats.level_beta_max.size() == 2);
    CHECK(stats.level_beta_max[0] == doctest::Approx(0.0));  // level 3
    CHECK(stats.level_beta_max[1] == doctest::Approx(0.0));  // level 2
    CHECK(r.queries == stats.predicted_queries);
}

TEST_CASE("depth-3 chain with genuine approximation at the middle level") {
    OracleTable f = OracleTable::single_one(3, 6);
    ApproxParams p = make_params(3, {1, 1, 1}, {2, 2, 1});
    SigmaStats stats;
    DeciderResult r = sigma_d_eval(f, p, &stats);
    CHECK(r.answer == eval_sigma(f, p.widths));
    CHECK(r.success_probability >= 2.0 / 3);
    CHECK(r.queries == stats.predicted_queries);
    CHECK(stats.top_gate_workspace > 0);
}

TEST_CASE("zero-width middle level passes through at no cost") {
    OracleTable f = OracleTable::single_one(3, 5);
    ApproxParams with_gap = make_params(3, {1, 0, 2}, {3, 1, 2});
    DeciderResult r = sigma_d_eval(f, with_gap);
    // OR then empty AND then OR collapses to OR over all 3 bits.
    CHECK(r.answer == eval_or(f));
    CHECK(r.success_probability >= 2.0 / 3);
    CHECK(r.queries == sigma_predicted_queries(with_gap));
}

TEST_CASE("register caps surface as resource errors with a tally") {
    OracleTable f = OracleTable::random(3, 4);
    CHECK_THROWS_AS(sigma2_eval(f, 2, 1.0 / 12, 3, 2, /*cap=*/8), ResourceError);
    try {
        sigma2_eval(f, 2, 1.0 / 12, 3, 2, 8);
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("exceeds the cap") != std::string::npos);
    }
}

TEST_CASE("measured decider rejects a mismatched analysis twin") {
    OracleTable f = OracleTable::random(2, 1);
    TableGGate gate(f);
    TableGGate twin(OracleTable::random(3, 2));
    CHECK_THROWS_AS(measured_decider(gate, 2, ladder_schedule(2), QuantSense::Exists,
                                     eval_or(f), kDefaultQubitCap, &twin),
                    ValidationError);
}
