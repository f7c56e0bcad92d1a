#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbb/oracle.hpp"

namespace qbb {

enum class CommPredicate { Disj, Eq, Ip, Disjointness };

std::string predicate_name(CommPredicate p);
CommPredicate parse_predicate(const std::string& name);

// The 2^N x 2^N 0/1 matrix M[g, h] = P(g, h) with N = 2^n; rows and columns
// are indexed by the integer value of the truth-table bit string. Bit-packed.
class CommMatrix {
public:
    // n <= 3 by default (side up to 256); n = 4 (side 65536) only with
    // allow_large, since the matrix alone takes half a gigabyte and exact
    // rank at that side is out of reach.
    static CommMatrix build(CommPredicate predicate, int n, bool allow_large = false);

    int n() const { return n_; }
    std::uint64_t side() const { return side_; }
    CommPredicate predicate() const { return predicate_; }
    std::string name() const { return predicate_name(predicate_); }

    int value(std::uint64_t row, std::uint64_t col) const {
        const std::uint64_t bit = row * side_ + col;
        return static_cast<int>(words_[bit >> 6] >> (bit & 63) & 1);
    }

    // One row of 0/1 characters per line.
    std::string export_rows() const;
    void save(const std::string& path) const;

private:
    CommMatrix(CommPredicate predicate, int n, std::uint64_t side);
    void set(std::uint64_t row, std::uint64_t col, int v);

    CommPredicate predicate_;
    int n_;
    std::uint64_t side_;
    std::vector<std::uint64_t> words_;
};

// Classical predicate evaluators over explicit tables.
int eval_disj(const OracleTable& g, const OracleTable& h);
int eval_eq(const OracleTable& g, const OracleTable& h);
int eval_ip(const OracleTable& g, const OracleTable& h);

// Rank over the rationals via fraction-free (Bareiss) elimination on exact
// integers; deterministic, OpenMP-parallel row updates.
std::uint64_t exact_rank(const CommMatrix& matrix);

// Independent serial reference: Gaussian elimination over exact rationals.
std::uint64_t exact_rank_reference(const CommMatrix& matrix);

}  // namespace qbb
