#include "qbb/commmatrix.hpp"

#include <bit>
#include <fstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "qbb/errors.hpp"

namespace qbb {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

std::string predicate_name(CommPredicate p) {
    switch (p) {
        case CommPredicate::Disj: return "DISJ";
        case CommPredicate::Eq: return "EQ";
        case CommPredicate::Ip: return "IP";
        case CommPredicate::Disjointness: return "disjointness";
    }
    throw InternalError("unknown predicate");
}

CommPredicate parse_predicate(const std::string& name) {
    if (name == "DISJ" || name == "disj") return CommPredicate::Disj;
    if (name == "EQ" || name == "eq") return CommPredicate::Eq;
    if (name == "IP" || name == "ip") return CommPredicate::Ip;
    if (name == "disjointness") return CommPredicate::Disjointness;
    throw ValidationError("unknown predicate \"" + name +
                          "\" (expected disj, eq, ip or disjointness)");
}

CommMatrix::CommMatrix(CommPredicate predicate, int n, std::uint64_t side)
    : predicate_(predicate), n_(n), side_(side) {
    words_.assign((side * side + 63) / 64, 0);
}

void CommMatrix::set(std::uint64_t row, std::uint64_t col, int v) {
    const std::uint64_t bit = row * side_ + col;
    if (v)
        words_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
    else
        words_[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63));
}

CommMatrix CommMatrix::build(CommPredicate predicate, int n, bool allow_large) {
    if (n < 1) throw ValidationError("need n >= 1");
    const int limit = allow_large ? 4 : 3;
    if (n > limit)
        throw ResourceError("communication matrix for n = " + std::to_string(n) +
                            " has side 2^(2^n); the default limit is n <= 3" +
                            (allow_large ? " (hard limit 4)" : ", pass the explicit "
                                                              "flag for n = 4"));
    const std::uint64_t side = std::uint64_t{1} << (std::uint64_t{1} << n);
    CommMatrix m(predicate, n, side);
    for (std::uint64_t g = 0; g < side; ++g) {
        for (std::uint64_t h = 0; h < side; ++h) {
            const std::uint64_t both = g & h;
            int v = 0;
            switch (predicate) {
                case CommPredicate::Disj: v = both != 0; break;
                case CommPredicate::Eq: v = g == h; break;
                case CommPredicate::Ip: v = std::popcount(both) & 1; break;
                case CommPredicate::Disjointness: v = both == 0; break;
            }
            m.set(g, h, v);
        }
    }
    return m;
}

std::string CommMatrix::export_rows() const {
    std::string out;
    out.reserve(side_ * (side_ + 1));
    for (std::uint64_t r = 0; r < side_; ++r) {
        for (std::uint64_t c = 0; c < side_; ++c)
            out.push_back(static_cast<char>('0' + value(r, c)));
        out.push_back('\n');
    }
    return out;
}

void CommMatrix::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write matrix file " + path);
    out << export_rows();
}

int eval_disj(const OracleTable& g, const OracleTable& h) {
    if (g.n() != h.n()) throw ValidationError("predicate needs equal arities");
    for (std::uint64_t x = 0; x < g.size(); ++x)
        if (g.value(x) && h.value(x)) return 1;
    return 0;
}

int eval_eq(const OracleTable& g, const OracleTable& h) {
    if (g.n() != h.n()) throw ValidationError("predicate needs equal arities");
    return g.bits() == h.bits() ? 1 : 0;
}

int eval_ip(const OracleTable& g, const OracleTable& h) {
    if (g.n() != h.n()) throw ValidationError("predicate needs equal arities");
    int acc = 0;
    for (std::uint64_t x = 0; x < g.size(); ++x) acc ^= g.value(x) & h.value(x);
    return acc;
}

std::uint64_t exact_rank(const CommMatrix& matrix) {
    const std::int64_t side = static_cast<std::int64_t>(matrix.side());
    if (side > 4096)
        throw ResourceError("exact rank beyond side 4096 is out of reach");
    std::vector<std::vector<cpp_int>> a(side, std::vector<cpp_int>(side));
    for (std::int64_t r = 0; r < side; ++r)
        for (std::int64_t c = 0; c < side; ++c) a[r][c] = matrix.value(r, c);

    // Fraction-free (Bareiss) elimination: every division is exact, so the
    // row-echelon profile is the rank over the rationals.
    cpp_int prev = 1;
    std::int64_t rank = 0;
    for (std::int64_t col = 0; col < side && rank < side; ++col) {
        std::int64_t pivot = -1;
        for (std::int64_t r = rank; r < side; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = rank + 1; r < side; ++r) {
            if (a[r][col] == 0) {
                for (std::int64_t c = col + 1; c < side; ++c) {
                    a[r][c] = a[rank][col] * a[r][c] / prev;
                }
                continue;
            }
            for (std::int64_t c = col + 1; c < side; ++c)
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<std::uint64_t>(rank);
}

std::uint64_t exact_rank_reference(const CommMatrix& matrix) {
    const std::int64_t side = static_cast<std::int64_t>(matrix.side());
    if (side > 1024)
        throw ResourceError("the rational reference eliminator is capped at side 1024");
    std::vector<std::vector<cpp_rational>> a(side, std::vector<cpp_rational>(side));
    for (std::int64_t r = 0; r < side; ++r)
        for (std::int64_t c = 0; c < side; ++c) a[r][c] = matrix.value(r, c);

    std::int64_t rank = 0;
    for (std::int64_t col = 0; col < side && rank < side; ++col) {
        std::int64_t pivot = -1;
        for (std::int64_t r = rank; r < side; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (std::int64_t r = rank + 1; r < side; ++r) {
            if (a[r][col] == 0) continue;
            const cpp_rational factor = a[r][col] / a[rank][col];
            for (std::int64_t c = col; c < side; ++c)
                a[r][c] -= factor * a[rank][c];
        }
        ++rank;
    }
    return static_cast<std::uint64_t>(rank);
}

}  // namespace qbb
