#include "qbb/oracle.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qbb/errors.hpp"

namespace qbb {

OracleTable::OracleTable(int n, std::vector<std::uint8_t> bits)
    : n_(n), bits_(std::move(bits)) {
    if (n < 0 || n > 30) throw ValidationError("oracle arity out of range");
    if (bits_.size() != (std::uint64_t{1} << n))
        throw ValidationError("oracle table needs exactly 2^n entries");
    for (auto b : bits_)
        if (b > 1) throw ValidationError("oracle table entries must be 0 or 1");
}

OracleTable OracleTable::constant(int n, int value) {
    return OracleTable(n, std::vector<std::uint8_t>(std::uint64_t{1} << n,
                                                    static_cast<std::uint8_t>(value & 1)));
}

OracleTable OracleTable::single_one(int n, std::uint64_t where) {
    std::vector<std::uint8_t> bits(std::uint64_t{1} << n, 0);
    if (where >= bits.size()) throw ValidationError("marked index out of range");
    bits[where] = 1;
    return OracleTable(n, std::move(bits));
}

OracleTable OracleTable::random(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(std::uint64_t{1} << n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
    return OracleTable(n, std::move(bits));
}

OracleTable OracleTable::from_bitstring(int n, const std::string& str) {
    if (str.size() != (std::uint64_t{1} << n))
        throw ValidationError("bit string length must be 2^n");
    std::vector<std::uint8_t> bits(str.size());
    for (std::size_t i = 0; i < str.size(); ++i) {
        if (str[i] != '0' && str[i] != '1')
            throw ValidationError("bit string may contain only 0 and 1");
        bits[i] = static_cast<std::uint8_t>(str[i] - '0');
    }
    return OracleTable(n, std::move(bits));
}

std::uint64_t OracleTable::count_ones() const {
    std::uint64_t t = 0;
    for (auto b : bits_) t += b;
    return t;
}

std::string OracleTable::bitstring() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
}

OracleTable OracleTable::negated() const {
    std::vector<std::uint8_t> bits(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) bits[i] = bits_[i] ^ 1;
    return OracleTable(n_, std::move(bits));
}

OracleTable OracleTable::restrict_prefix(std::uint64_t prefix, int count) const {
    if (count < 0 || count > n_) throw ValidationError("prefix length out of range");
    const int rest = n_ - count;
    std::vector<std::uint8_t> bits(std::uint64_t{1} << rest);
    for (std::uint64_t y = 0; y < bits.size(); ++y)
        bits[y] = bits_[(prefix << rest) | y];
    return OracleTable(rest, std::move(bits));
}

std::string OracleTable::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["bits"] = bitstring();
    return j.dump();
}

OracleTable OracleTable::parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j.contains("bits"))
        throw ValidationError("oracle JSON needs fields n and bits");
    return from_bitstring(j["n"].get<int>(), j["bits"].get<std::string>());
}

OracleTable OracleTable::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open oracle file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void OracleTable::save_json(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write oracle file " + path);
    out << to_json() << "\n";
}

std::string CombinerSpec::name() const {
    if (table == and_combiner().table) return "AND";
    if (table == or_combiner().table) return "OR";
    if (table == xor_combiner().table) return "XOR";
    std::string s = "L";
    for (auto b : table) s += static_cast<char>('0' + b);
    return s;
}

void apply_f_gate(StateVector& state, const OracleTable& f, std::span<const int> inputs,
                  int output, QueryCounter& counter) {
    if (static_cast<int>(inputs.size()) != f.n())
        throw ValidationError("f-gate input count must equal oracle arity");
    state.apply_bitxor(inputs, output, [&f](std::uint64_t x) { return f.value(x); });
    counter.add();
}

void apply_phase_oracle(StateVector& state, const OracleTable& f,
                        std::span<const int> inputs, int ancilla,
                        QueryCounter& counter) {
    for (int q : inputs)
        if (q == ancilla) throw ValidationError("phase-oracle ancilla collides with input");
    // |0> -> |->, kick the phase back, restore.
    state.apply_x(ancilla);
    state.apply_h(ancilla);
    apply_f_gate(state, f, inputs, ancilla, counter);
    state.apply_h(ancilla);
    state.apply_x(ancilla);
}

OracleTable pointwise_combine(const CombinerSpec& L, const OracleTable& g,
                              const OracleTable& h) {
    if (g.n() != h.n()) throw ValidationError("combiner needs equal oracle arities");
    std::vector<std::uint8_t> bits(g.size());
    for (std::uint64_t x = 0; x < g.size(); ++x)
        bits[x] = static_cast<std::uint8_t>(L.eval(g.value(x), h.value(x)));
    return OracleTable(g.n(), std::move(bits));
}

int eval_or(const OracleTable& f) { return f.count_ones() > 0 ? 1 : 0; }

int eval_parity(const OracleTable& f) { return static_cast<int>(f.count_ones() & 1); }

int eval_majority(const OracleTable& f) {
    return f.count_ones() > f.size() / 2 ? 1 : 0;
}

BalAnswer eval_bal(const OracleTable& f) {
    const std::uint64_t t = f.count_ones();
    if (t == 0) return BalAnswer::ConstantZero;
    if (t == f.size() / 2) return BalAnswer::Balanced;
    return BalAnswer::OutsidePromise;
}

namespace {
// Level `level` of the alternation; OR blocks sit at even levels.
int eval_sigma_level(const OracleTable& f, std::span<const int> widths, std::size_t level) {
    if (level == widths.size()) {
        if (f.n() != 0) throw InternalError("quantifier widths failed to consume input");
        return f.value(0);
    }
    const int w = widths[level];
    const bool is_or = level % 2 == 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
        const int v = eval_sigma_level(f.restrict_prefix(x, w), widths, level + 1);
        if (is_or && v == 1) return 1;
        if (!is_or && v == 0) return 0;
    }
    return is_or ? 0 : 1;
}
}  // namespace

int eval_sigma(const OracleTable& f, std::span<const int> widths) {
    int total = 0;
    for (int w : widths) {
        if (w < 0) throw ValidationError("quantifier widths must be nonnegative");
        total += w;
    }
    if (total != f.n())
        throw ValidationError("quantifier widths must sum to the oracle arity");
    return eval_sigma_level(f, widths, 0);
}

int eval_pi(const OracleTable& f, std::span<const int> widths) {
    return 1 - eval_sigma(f.negated(), widths);
}

int hamming_distance(const OracleTable& g, const OracleTable& h) {
    if (g.n() != h.n()) throw ValidationError("hamming distance needs equal arities");
    int d = 0;
    for (std::uint64_t x = 0; x < g.size(); ++x) d += g.value(x) != h.value(x);
    return d;
}

}  // namespace qbb
