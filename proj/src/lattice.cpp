#include "toricwc/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace twc {

RatMatrix to_rat(const IntMatrix& A) {
    RatMatrix R(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) R(i, j) = Rat(A(i, j));
    return R;
}

std::vector<Int> SnfDecomposition::diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
        if (S(i, i) != 0) d.push_back(S(i, i));
    return d;
}

namespace {

// row_i += q * row_j on S and U
void add_row(IntMatrix& S, IntMatrix& U, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) += q * S(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) += q * U(j, c);
}

// col_i += q * col_j on S and V
void add_col(IntMatrix& S, IntMatrix& V, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < S.rows(); ++r) S(r, i) += q * S(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r) V(r, i) += q * V(r, j);
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    IntMatrix S = A, U = IntMatrix::identity(m), V = IntMatrix::identity(n);

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        auto pick_pivot = [&]() -> bool {
            bool found = false;
            std::size_t bi = t, bj = t;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (S(i, j) != 0 && (!found || abs(S(i, j)) < best)) {
                        found = true;
                        best = abs(S(i, j));
                        bi = i;
                        bj = j;
                    }
            if (!found) return false;
            if (bi != t) {
                S.swap_rows(bi, t);
                U.swap_rows(bi, t);
            }
            if (bj != t) {
                S.swap_cols(bj, t);
                V.swap_cols(bj, t);
            }
            return true;
        };
        if (!pick_pivot()) break;

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                add_row(S, U, i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                add_col(S, V, j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) {
                pick_pivot();
                continue;
            }
            // divisibility of the remaining block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        add_row(S, U, t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c) S(t, c) = -S(t, c);
            for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
        }
    }
    return {U, S, V};
}

IntVec FgAbGroup::unit(std::size_t i) const {
    IntVec e(projection.cols(), Int(0));
    e[i] = 1;
    return e;
}

IntVec FgAbGroup::apply(const IntVec& x) const {
    IntVec y = projection * x;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (moduli[i] != 0) {
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), moduli[i].get_mpz_t());
            y[i] = r;
        }
    return y;
}

IntVec FgAbGroup::free_part(const IntVec& n) const {
    IntVec out;
    for (std::size_t i = 0; i < n.size(); ++i)
        if (moduli[i] == 0) out.push_back(n[i]);
    return out;
}

FgAbGroup cokernel_with_projection(const IntMatrix& A) {
    const std::size_t m = A.rows();
    auto snf = smith_normal_form(A);
    std::vector<std::size_t> tors_rows, free_rows;
    FgAbGroup G;
    const std::size_t k = std::min(A.rows(), A.cols());
    for (std::size_t i = 0; i < m; ++i) {
        Int d = i < k ? snf.S(i, i) : Int(0);
        if (d == 1) continue;
        if (d == 0)
            free_rows.push_back(i);
        else {
            tors_rows.push_back(i);
            G.torsion.push_back(d);
        }
    }
    G.free_rank = free_rows.size();
    G.projection = IntMatrix(tors_rows.size() + free_rows.size(), m);
    std::size_t r = 0;
    for (auto i : tors_rows) {
        for (std::size_t c = 0; c < m; ++c) G.projection(r, c) = snf.U(i, c);
        G.moduli.push_back(snf.S(i, i));
        ++r;
    }
    for (auto i : free_rows) {
        for (std::size_t c = 0; c < m; ++c) G.projection(r, c) = snf.U(i, c);
        G.moduli.push_back(0);
        ++r;
    }
    return G;
}

IntMatrix integer_kernel(const IntMatrix& A) {
    auto snf = smith_normal_form(A);
    std::size_t rk = snf.diagonal().size();
    IntMatrix K(A.cols(), A.cols() - rk);
    for (std::size_t j = rk; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.cols(); ++i) K(i, j - rk) = snf.V(i, j);
    return K;
}

namespace {

IntMatrix to_int(const RatMatrix& R) {
    IntMatrix A(R.rows(), R.cols());
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j) {
            if (!is_integer(R(i, j))) throw Error("Internal", "expected an integral matrix");
            A(i, j) = R(i, j).get_num();
        }
    return A;
}

}  // namespace

IntMatrix lattice_basis(const IntMatrix& G) {
    auto snf = smith_normal_form(G);
    auto d = snf.diagonal();
    IntMatrix Uinv = to_int(inverse(to_rat(snf.U)));
    IntMatrix B(G.rows(), d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t i = 0; i < G.rows(); ++i) B(i, j) = Uinv(i, j) * d[j];
    return B;
}

namespace {

bool in_column_lattice(const SnfDecomposition& snf, const IntVec& x) {
    IntVec y = snf.U * x;
    auto d = snf.diagonal();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < d.size()) {
            if (y[i] % d[i] != 0) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool same_column_lattice(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows() != B.rows()) return false;
    auto sa = smith_normal_form(A), sb = smith_normal_form(B);
    for (std::size_t j = 0; j < A.cols(); ++j)
        if (!in_column_lattice(sb, A.col(j))) return false;
    for (std::size_t j = 0; j < B.cols(); ++j)
        if (!in_column_lattice(sa, B.col(j))) return false;
    return true;
}

IntMatrix dual_characters(const FgAbGroup& N, long expected_rank) {
    const std::size_t k = N.projection.rows(), m = N.projection.cols();
    IntMatrix M(k, m + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < m; ++j) M(i, j) = N.projection(i, j);
        M(i, m + i) = N.moduli[i];
    }
    IntMatrix K = integer_kernel(M);
    IntMatrix X(m, K.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < K.cols(); ++j) X(i, j) = K(i, j);
    IntMatrix basis = lattice_basis(X);
    if (expected_rank >= 0 && basis.cols() != static_cast<std::size_t>(expected_rank))
        throw Error("RankMismatch", "kernel of beta has rank " + std::to_string(basis.cols()) +
                                        ", expected " + std::to_string(expected_rank));
    return basis;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& A) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t p = r;
        while (p < A.rows() && A(p, c) == 0) ++p;
        if (p == A.rows()) continue;
        A.swap_rows(p, r);
        Rat inv = 1 / A(r, c);
        for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) *= inv;
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == r || A(i, c) == 0) continue;
            Rat f = A(i, c);
            for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::size_t rank(const RatMatrix& A) {
    RatMatrix B = A;
    return rref(B).size();
}

Rat determinant(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw Error("DimensionMismatch", "determinant of non-square matrix");
    RatMatrix B = A;
    Rat det = 1;
    const std::size_t n = B.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && B(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            B.swap_rows(p, c);
            det = -det;
        }
        det *= B(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (B(i, c) == 0) continue;
            Rat f = B(i, c) / B(c, c);
            for (std::size_t j = c; j < n; ++j) B(i, j) -= f * B(c, j);
        }
    }
    return det;
}

RatMatrix inverse(const RatMatrix& A) {
    const std::size_t n = A.rows();
    if (n != A.cols()) throw Error("DimensionMismatch", "inverse of non-square matrix");
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error("SingularMatrix", "matrix is singular");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

RatVec solve(const RatMatrix& A, const RatVec& b) { return inverse(A) * b; }

std::vector<RatVec> nullspace(const RatMatrix& A) {
    RatMatrix B = A;
    auto piv = rref(B);
    std::vector<bool> is_piv(A.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<RatVec> out;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVec v(A.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -B(r, f);
        out.push_back(v);
    }
    return out;
}

std::string to_string(const IntMatrix& A) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < A.rows(); ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < A.cols(); ++j) os << (j ? "," : "") << A(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace twc
