#include "serival/membership.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace serival {
namespace {

using Row = std::vector<Scalar>;

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row.
std::vector<int> row_reduce(std::vector<Row>& m, int ncols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][static_cast<std::size_t>(c)].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Scalar inv = m[r][static_cast<std::size_t>(c)].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || m[k][static_cast<std::size_t>(c)].is_zero()) continue;
      const Scalar f = m[k][static_cast<std::size_t>(c)];
      for (std::size_t j = 0; j < m[k].size(); ++j) {
        if (!m[r][j].is_zero()) m[k][j] -= f * m[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::optional<std::vector<Scalar>> solve_prime(const Field& field, std::vector<Row> a, std::vector<Scalar> b) {
  const int ncols = a.empty() ? 0 : static_cast<int>(a.front().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  const auto pivots = row_reduce(a, ncols + 1);
  std::vector<Scalar> x(static_cast<std::size_t>(ncols), field.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == ncols) return std::nullopt;
    x[static_cast<std::size_t>(pivots[r])] = a[r][static_cast<std::size_t>(ncols)];
  }
  return x;
}

std::optional<std::vector<Scalar>> solve_rational(const Field& field, const std::vector<Row>& a,
                                                  const std::vector<Scalar>& b) {
  const std::size_t ncols = a.empty() ? 0 : a.front().size();
  // Integer augmented matrix.
  std::vector<std::vector<mpz_class>> m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class lcm = b[i].rational().get_den();
    for (const auto& x : a[i]) lcm = lcm * x.rational().get_den() / gcd(lcm, x.rational().get_den());
    std::vector<mpz_class> row;
    for (const auto& x : a[i]) row.push_back(mpq_class(x.rational() * lcm).get_num());
    row.push_back(mpq_class(b[i].rational() * lcm).get_num());
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t k = r + 1; k < m.size(); ++k) {
      if (m[k][c] == 0) continue;
      const mpz_class piv = m[r][c];
      const mpz_class f = m[k][c];
      mpz_class content = 0;
      for (std::size_t j = c; j <= ncols; ++j) {
        m[k][j] = piv * m[k][j] - f * m[r][j];
        content = gcd(content, m[k][j]);
      }
      if (content > 1) {
        for (std::size_t j = c; j <= ncols; ++j) m[k][j] /= content;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t k = r; k < m.size(); ++k) {
    if (m[k][ncols] != 0) return std::nullopt;
  }
  std::vector<mpq_class> x(ncols, 0);
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = pivots[k];
    mpq_class acc = m[k][ncols];
    for (std::size_t j = c + 1; j < ncols; ++j) {
      if (m[k][j] != 0) acc -= mpq_class(m[k][j]) * x[j];
    }
    x[c] = acc / mpq_class(m[k][c]);
  }
  std::vector<Scalar> out;
  for (const auto& v : x) out.push_back(field.from_rational(v));
  return out;
}

Series truncated_to(const Series& s, int K) { return Series(s.poly(), std::min(s.prec(), K)); }

}  // namespace

std::vector<Monomial> monomials_between(int nvars, int low, int high) {
  std::vector<Monomial> out;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  for (int degree = std::max(low, 0); degree < high; ++degree) {
    std::fill(e.begin(), e.end(), 0);
    e[0] = degree;
    for (;;) {
      out.push_back(Monomial::from_exponents(e));
      int i = nvars - 2;
      while (i >= 0 && e[static_cast<std::size_t>(i)] == 0) --i;
      if (i < 0) break;
      --e[static_cast<std::size_t>(i)];
      const int rest = e[static_cast<std::size_t>(nvars - 1)] + 1;
      e[static_cast<std::size_t>(nvars - 1)] = 0;
      e[static_cast<std::size_t>(i + 1)] = rest;
    }
  }
  return out;
}

std::optional<std::vector<Scalar>> solve_linear(const Field& field, std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b) {
  if (a.size() != b.size()) throw std::invalid_argument("row count mismatch");
  if (field.is_rational()) return solve_rational(field, a, b);
  return solve_prime(field, std::move(a), std::move(b));
}

std::optional<MembershipWitness> in_ideal_mod(const Series& w, const std::vector<Series>& gens, int shift, int K) {
  if (K < shift) throw std::invalid_argument("precision K must be at least the shift");
  if (w.prec() < K) throw std::invalid_argument("K exceeds the precision of w");
  for (const auto& g : gens) {
    if (g.prec() < K) throw std::invalid_argument("K exceeds the precision of a generator");
  }
  const Field& field = w.field();
  const int n = w.nvars();
  const auto rows = monomials_between(n, 0, K);
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], r);

  struct Column {
    std::size_t gen;
    Monomial mono;
  };
  std::vector<Column> cols;
  std::vector<Row> a(rows.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const OrderValue og = ord(gens[j]);
    if (!og.is_exact()) continue;
    for (const auto& m : monomials_between(n, shift, K - og.value())) {
      cols.push_back({j, m});
      for (auto& row : a) row.push_back(field.zero());
      for (const auto& [gm, c] : gens[j].poly().terms()) {
        const Monomial prod = gm * m;
        if (prod.degree() < K) a[row_of.at(prod)].back() = c;
      }
    }
  }
  std::vector<Scalar> b(rows.size(), field.zero());
  for (const auto& [m, c] : w.poly().terms()) {
    if (m.degree() < K) b[row_of.at(m)] = c;
  }
  const auto x = cols.empty() ? (w.poly().truncated(K).is_zero() ? std::optional<std::vector<Scalar>>(std::vector<Scalar>{})
                                                                  : std::nullopt)
                              : solve_linear(field, std::move(a), std::move(b));
  if (!x) return std::nullopt;

  MembershipWitness out;
  out.shift = shift;
  out.precision = K;
  std::vector<std::vector<Poly::Term>> terms(gens.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (!(*x)[c].is_zero()) terms[cols[c].gen].emplace_back(cols[c].mono, (*x)[c]);
  }
  Series sum(field, n, kExactPrec);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    out.eps.push_back(Series::exact(Poly::from_terms(field, n, std::move(terms[j]))));
    sum += out.eps.back() * gens[j];
  }
  out.verified = (truncated_to(sum, K) - truncated_to(w, K)).is_zero();
  for (const auto& e : out.eps) out.verified = out.verified && ord(e).bound() >= shift;
  return out;
}

ArtinReesReport artin_rees_probe(const Series& u, const Series& v, int i_max, int K, long budget) {
  if (u.is_zero() || v.is_zero()) throw std::invalid_argument("generators must be nonzero");
  const Field& field = u.field();
  const int n = u.nvars();
  ArtinReesReport rep;
  rep.u = u;
  rep.v = v;
  rep.i_max = i_max;
  rep.K = K;

  const auto all = monomials_between(n, 0, K);
  std::map<Monomial, std::size_t> index;
  for (std::size_t r = 0; r < all.size(); ++r) index.emplace(all[r], r);
  // Column j of `image` is the coefficient vector of (monomial * generator)
  // mod m^K for the j-th unknown of (a, b).
  std::vector<Row> image;
  for (const Series* g : {&u, &v}) {
    for (const auto& m : all) {
      Row col(all.size(), field.zero());
      for (const auto& [gm, c] : g->poly().terms()) {
        const Monomial prod = gm * m;
        if (prod.degree() < K) col[index.at(prod)] = c;
      }
      image.push_back(std::move(col));
    }
  }

  for (int i0 = 0; i0 < K && !rep.i0; ++i0) {
    bool pass = true;
    for (int i = 0; i <= i_max && pass; ++i) {
      const int level = i + i0;
      if (level >= K) break;
      // Kernel of (a, b) -> terms of au + bv below `level`.
      const std::size_t low_rows = monomials_between(n, 0, level).size();
      std::vector<Row> sys(low_rows, Row(image.size(), field.zero()));
      for (std::size_t j = 0; j < image.size(); ++j) {
        for (std::size_t r = 0; r < low_rows; ++r) sys[r][j] = image[j][r];
      }
      const auto pivots = row_reduce(sys, static_cast<int>(image.size()));
      std::vector<bool> is_pivot(image.size(), false);
      for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
      // Images of the kernel basis, then a basis of their span.
      std::vector<Row> ws;
      for (std::size_t f = 0; f < image.size(); ++f) {
        if (is_pivot[f]) continue;
        Row w = image[f];
        for (std::size_t r = 0; r < pivots.size(); ++r) {
          const Scalar coef = -sys[r][f];
          if (coef.is_zero()) continue;
          const auto& col = image[static_cast<std::size_t>(pivots[r])];
          for (std::size_t k = 0; k < w.size(); ++k) {
            if (!col[k].is_zero()) w[k] += coef * col[k];
          }
        }
        ws.push_back(std::move(w));
      }
      row_reduce(ws, static_cast<int>(all.size()));
      for (const auto& wv : ws) {
        if (++rep.tested > budget) {
          rep.inconclusive = true;
          return rep;
        }
        std::vector<Poly::Term> terms;
        for (std::size_t k = 0; k < wv.size(); ++k) {
          if (!wv[k].is_zero()) terms.emplace_back(all[k], wv[k]);
        }
        const Series w = Series::exact(Poly::from_terms(field, n, std::move(terms)));
        if (!in_ideal_mod(w, {u, v}, i, K)) {
          rep.rejections.push_back("i0=" + std::to_string(i0) + ": i=" + std::to_string(i) +
                                   ", w=" + w.to_string() + " not in (u,v)m^" + std::to_string(i));
          pass = false;
          break;
        }
      }
    }
    if (pass) rep.i0 = i0;
  }
  if (!rep.i0) rep.inconclusive = true;
  return rep;
}

std::optional<Projection> project_to_solution(const Series& x, const Series& y, const Series& u, const Series& v,
                                              int i, int K) {
  const Series w = truncated_to(u * y - v * x, K);
  const auto witness = in_ideal_mod(w, {u, v}, i, K);
  if (!witness) return std::nullopt;
  // w = eps1 u + eps2 v, so u (y - eps1) - v (x + eps2) = 0.
  Projection p{truncated_to(x + witness->eps[1], K), truncated_to(y - witness->eps[0], K)};
  if (!truncated_to(u * p.y - v * p.x, K).is_zero() || !witness->verified) {
    throw std::logic_error("projection failed to verify");
  }
  return p;
}

std::optional<bool> coprime(const Series& u, const Series& v) {
  if (!u.is_exact() || !v.is_exact()) return std::nullopt;
  return gcd(u.poly(), v.poly()).is_constant();
}

}  // namespace serival
