#include "sj/reduction.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>

namespace sj {

namespace {

using std::int64_t;

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(std::abs(a), std::abs(b)); }

// gcd of all k x k minors of a k x n integer matrix (k <= 3); the rows extend
// to an element of GL(n,Z) iff this gcd is 1
int64_t minor_gcd(const IMat& rows) {
  const int k = static_cast<int>(rows.rows());
  const int n = static_cast<int>(rows.cols());
  int64_t g = 0;
  if (k == 1) {
    for (int j = 0; j < n; ++j) g = gcd64(g, rows(0, j));
    return g;
  }
  if (k == 2) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        g = gcd64(g, rows(0, a) * rows(1, b) - rows(0, b) * rows(1, a));
    return g;
  }
  if (k == 3 && n == 3) {
    const int64_t det = rows(0, 0) * (rows(1, 1) * rows(2, 2) - rows(1, 2) * rows(2, 1)) -
                        rows(0, 1) * (rows(1, 0) * rows(2, 2) - rows(1, 2) * rows(2, 0)) +
                        rows(0, 2) * (rows(1, 0) * rows(2, 1) - rows(1, 1) * rows(2, 0));
    return std::abs(det);
  }
  throw std::invalid_argument("minor_gcd: unsupported shape");
}

int64_t idet(const IMat& h) {
  const int n = static_cast<int>(h.rows());
  if (n == 1) return h(0, 0);
  if (n == 2) return h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  return h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
         h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
         h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
}

// inverse of a unimodular integer matrix via the adjugate (n <= 3)
IMat iinverse(const IMat& h) {
  const int n = static_cast<int>(h.rows());
  const int64_t det = idet(h);
  if (det != 1 && det != -1) throw std::logic_error("iinverse: matrix is not unimodular");
  IMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
  } else if (n == 2) {
    adj << h(1, 1), -h(0, 1), -h(1, 0), h(0, 0);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        if (r0 > r1) std::swap(r0, r1);
        if (c0 > c1) std::swap(c0, c1);
        const int64_t minor = h(r0, c0) * h(r1, c1) - h(r0, c1) * h(r1, c0);
        adj(j, i) = (((i + j) % 2 == 0) ? 1 : -1) * minor;
      }
  }
  return det == 1 ? adj : IMat(-adj);
}

double form_value(const RMat& y, const IMat& a) {
  const int n = static_cast<int>(y.rows());
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += static_cast<double>(a(0, i)) * y(i, j) * static_cast<double>(a(0, j));
  return s;
}

// enumerate integer row vectors with entries in [-bound, bound]
bool next_vector(IMat& a, int bound) {
  const int n = static_cast<int>(a.cols());
  for (int i = n - 1; i >= 0; --i) {
    if (a(0, i) < bound) {
      a(0, i) += 1;
      for (int j = i + 1; j < n; ++j) a(0, j) = -bound;
      return true;
    }
  }
  return false;
}

}  // namespace

MinkowskiCheck is_minkowski_reduced(const PositiveForm& form, int search_bound) {
  if (search_bound < 1) throw std::invalid_argument("is_minkowski_reduced: bound must be >= 1");
  const int n = form.n();
  const RMat& y = form.Y;
  const double tol = 1e-9 * y.diagonal().maxCoeff();

  MinkowskiCheck out;
  out.certificate.conditions_checked = {"M.1(bounded)", "M.2"};
  out.certificate.search_bound = search_bound;
  out.reduced = true;

  for (int k = 0; k + 1 < n; ++k)
    if (y(k, k + 1) < -tol) out.reduced = false;

  IMat a(1, n);
  for (int j = 0; j < n; ++j) a(0, j) = -search_bound;
  do {
    bool any = false;
    for (int j = 0; j < n; ++j) any = any || a(0, j) != 0;
    if (!any) continue;
    const double value = form_value(y, a);
    int64_t tail_gcd = 0;
    for (int k = n - 1; k >= 0; --k) {
      tail_gcd = gcd64(tail_gcd, a(0, k));
      if (tail_gcd == 1 && value < y(k, k) - tol) {
        out.reduced = false;
        break;
      }
    }
    if (!out.reduced) break;
  } while (next_vector(a, search_bound));
  return out;
}

namespace {

// pair-Gauss pre-reduction of the Gram matrix, tracked in h (rows = basis)
void pre_reduce(const RMat& y, IMat& h) {
  const int n = static_cast<int>(y.rows());
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool changed = false;
    RMat g = h.cast<double>() * y * h.cast<double>().transpose();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto t = static_cast<int64_t>(std::llround(g(i, j) / g(j, j)));
        if (t != 0) {
          h.row(i) -= t * h.row(j);
          g = h.cast<double>() * y * h.cast<double>().transpose();
          changed = true;
        }
      }
    // sort rows by diagonal value
    for (int i = 0; i + 1 < n; ++i)
      for (int j = 0; j + 1 < n - i; ++j)
        if (g(j, j) > g(j + 1, j + 1) * (1.0 + 1e-14)) {
          h.row(j).swap(h.row(j + 1));
          g.row(j).swap(g.row(j + 1));
          g.col(j).swap(g.col(j + 1));
          changed = true;
        }
    if (!changed) return;
  }
}

// sign convention: first nonzero entry positive, so a and -a collapse to one
// candidate and already-reduced forms get the identity transform
IMat sign_canonical(IMat a) {
  for (int j = 0; j < a.cols(); ++j) {
    if (a(0, j) == 0) continue;
    return a(0, j) > 0 ? a : IMat(-a);
  }
  return a;
}

bool lex_greater(const IMat& a, const IMat& b) {
  for (int j = 0; j < a.cols(); ++j)
    if (a(0, j) != b(0, j)) return a(0, j) > b(0, j);
  return false;
}

// greedy Minkowski rows over the pre-reduced Gram; box search with
// extendability (minor gcd) constraint
IMat greedy_rows(const RMat& gram, int bound) {
  const int n = static_cast<int>(gram.rows());
  IMat rows(0, n);
  for (int k = 0; k < n; ++k) {
    IMat best(1, n);
    double best_value = 0;
    bool have = false;
    IMat a(1, n);
    for (int j = 0; j < n; ++j) a(0, j) = -bound;
    do {
      bool any = false;
      for (int j = 0; j < n; ++j) any = any || a(0, j) != 0;
      if (!any) continue;
      const IMat cand = sign_canonical(a);
      IMat stacked(k + 1, n);
      stacked.topRows(k) = rows;
      stacked.row(k) = cand.row(0);
      if (minor_gcd(stacked) != 1) continue;
      const double value = form_value(gram, cand);
      if (!have || value < best_value * (1.0 - 1e-13) ||
          (std::abs(value - best_value) <= 1e-13 * best_value && lex_greater(cand, best))) {
        best = cand;
        best_value = value;
        have = true;
      }
    } while (next_vector(a, bound));
    if (!have) throw std::runtime_error("minkowski_reduce: no admissible vector in search box");
    IMat stacked(k + 1, n);
    stacked.topRows(k) = rows;
    stacked.row(k) = best.row(0);
    rows = stacked;
  }
  return rows;
}

}  // namespace

FormReduction minkowski_reduce(const PositiveForm& form) {
  const int n = form.n();
  if (n > 3) throw std::invalid_argument("minkowski_reduce: only n <= 3 supported");

  IMat h = IMat::Identity(n, n);
  pre_reduce(form.Y, h);
  RMat gram = h.cast<double>() * form.Y * h.cast<double>().transpose();

  for (int bound : {5, 10}) {
    const IMat rows = greedy_rows(gram, bound);
    IMat reducer = rows * h;
    RMat reduced = reducer.cast<double>() * form.Y * reducer.cast<double>().transpose();
    // (M.2) sign fix: flipping row k+1 flips the sign of y_{k,k+1}
    for (int k = 0; k + 1 < n; ++k)
      if (reduced(k, k + 1) < 0) {
        reducer.row(k + 1) = -reducer.row(k + 1);
        reduced = reducer.cast<double>() * form.Y * reducer.cast<double>().transpose();
      }
    const MinkowskiCheck check = is_minkowski_reduced(PositiveForm(symmetrized(reduced)), 5);
    if (!check.reduced) continue;
    Certificate cert = check.certificate;
    cert.search_bound = bound;
    cert.conventions = {"row signs fixed so y_{k,k+1} >= 0"};
    return FormReduction{PositiveForm(symmetrized(reduced)), reducer, iinverse(reducer), cert};
  }
  throw std::runtime_error("minkowski_reduce: greedy search failed verification");
}

SymplecticMatrix random_integral_symplectic(int n, int word_length, Rng& rng) {
  RMat m = RMat::Identity(2 * n, 2 * n);
  const int len = word_length < 1 ? 1 : rng.uniform_int(1, word_length);
  for (int step = 0; step < len; ++step) {
    const int kind = rng.uniform_int(0, 2);
    RMat factor = RMat::Identity(2 * n, 2 * n);
    if (kind == 0) {
      RMat b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) b(i, j) = b(j, i) = rng.uniform_int(-2, 2);
      factor.topRightCorner(n, n) = b;
    } else if (kind == 1) {
      // embedded GL(n,Z): a few elementary row operations on E
      RMat u = RMat::Identity(n, n);
      const int ops = rng.uniform_int(1, 3);
      for (int t = 0; t < ops; ++t) {
        const int what = rng.uniform_int(0, 2);
        if (what == 0 && n > 1) {
          int i = rng.uniform_int(0, n - 1), j = rng.uniform_int(0, n - 1);
          if (i != j) {
            int c = rng.uniform_int(-2, 2);
            u.row(i) += c * u.row(j);
          }
        } else if (what == 1 && n > 1) {
          int i = rng.uniform_int(0, n - 1), j = rng.uniform_int(0, n - 1);
          if (i != j) u.row(i).swap(u.row(j));
        } else {
          u.row(rng.uniform_int(0, n - 1)) *= -1.0;
        }
      }
      factor.topLeftCorner(n, n) = u.transpose();
      factor.bottomRightCorner(n, n) = u.inverse();
    } else {
      factor.setZero();
      factor.topRightCorner(n, n) = -RMat::Identity(n, n);
      factor.bottomLeftCorner(n, n) = RMat::Identity(n, n);
    }
    m = m * factor;
  }
  return SymplecticMatrix((m.array().round()).matrix());
}

namespace {

// |det(C Z + D)|; Siegel's condition (S.1) for gamma is |det(CZ+D)| >= 1
double cocycle_abs_det(const RMat& sym, const CMat& z) {
  const int n = static_cast<int>(z.rows());
  const CMat czd = sym.bottomLeftCorner(n, n).cast<cplx>() * z + sym.bottomRightCorner(n, n).cast<cplx>();
  return std::abs(czd.determinant());
}

}  // namespace

SiegelCheck is_siegel_reduced(const SiegelPoint& Z, int word_length, int samples,
                              std::uint64_t seed) {
  const int n = Z.n();
  SiegelCheck out;
  out.reduced = true;
  out.certificate.conditions_checked = {"S.1(sampled)", "S.2", "S.3"};
  out.certificate.word_length = word_length;
  out.certificate.samples = samples;
  out.certificate.seed = seed;
  out.certificate.search_bound = 5;

  const RMat x = Z.real_part();
  for (int i = 0; i < n && out.reduced; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(x(i, j)) > 0.5 + 1e-9) {
        out.reduced = false;
        break;
      }

  if (out.reduced) out.reduced = is_minkowski_reduced(PositiveForm(Z.imag_part()), 5).reduced;

  if (out.reduced) {
    Rng rng(seed);
    for (int t = 0; t < samples; ++t) {
      const SymplecticMatrix gamma = random_integral_symplectic(n, word_length, rng);
      if (cocycle_abs_det(gamma.mat(), Z.Z()) < 1.0 - 1e-9) {
        out.reduced = false;
        break;
      }
    }
  }
  return out;
}

SiegelReduction siegel_reduce(const SiegelPoint& Z) {
  const int n = Z.n();
  if (n > 3) throw std::invalid_argument("siegel_reduce: only n <= 3 supported");

  RMat total = RMat::Identity(2 * n, 2 * n);
  CMat zc = Z.Z();
  int iterations = 0;
  double last_det_im = Z.imag_part().determinant();

  // deterministic raise candidates: full inversion and the diagonal partial inversions
  std::vector<RMat> raisers;
  {
    RMat sigma = RMat::Zero(2 * n, 2 * n);
    sigma.topRightCorner(n, n) = -RMat::Identity(n, n);
    sigma.bottomLeftCorner(n, n) = RMat::Identity(n, n);
    raisers.push_back(sigma);
    for (int j = 0; j < n && n > 1; ++j) {
      RMat partial = RMat::Zero(2 * n, 2 * n);
      partial.topLeftCorner(n, n) = RMat::Identity(n, n);
      partial.bottomRightCorner(n, n) = RMat::Identity(n, n);
      partial(j, j) = 0.0;
      partial(n + j, n + j) = 0.0;
      partial(j, n + j) = -1.0;
      partial(n + j, j) = 1.0;
      raisers.push_back(partial);
    }
  }

  const auto apply = [&](const RMat& gamma) {
    const CMat czd = gamma.bottomLeftCorner(n, n).cast<cplx>() * zc +
                     gamma.bottomRightCorner(n, n).cast<cplx>();
    const CMat num = gamma.topLeftCorner(n, n).cast<cplx>() * zc +
                     gamma.topRightCorner(n, n).cast<cplx>();
    zc = symmetrized(CMat(czd.transpose().partialPivLu().solve(num.transpose()).transpose()));
    total = gamma * total;
  };

  while (true) {
    if (++iterations > 10000)
      throw std::runtime_error("siegel_reduce: iteration limit exceeded (det Im = " +
                               std::to_string(last_det_im) + ")");
    // Minkowski-reduce Y via an embedded GL(n,Z) element
    const FormReduction fr = minkowski_reduce(PositiveForm(zc.imag()));
    RMat embed = RMat::Zero(2 * n, 2 * n);
    embed.topLeftCorner(n, n) = fr.reducer.cast<double>();
    embed.bottomRightCorner(n, n) = iinverse(fr.reducer).cast<double>().transpose();
    apply(embed);

    // integer translation of X into [-1/2, 1/2)
    RMat b(n, n);
    const RMat x = zc.real();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) b(i, j) = b(j, i) = -std::floor(x(i, j) + 0.5);
    RMat trans = RMat::Identity(2 * n, 2 * n);
    trans.topRightCorner(n, n) = b;
    apply(trans);

    const double det_im = zc.imag().determinant();
    if (det_im < last_det_im * (1.0 - 1e-9))
      throw std::logic_error("siegel_reduce: det Im decreased");
    last_det_im = det_im;

    // look for a det-Im-raising move
    bool raised = false;
    for (const RMat& gamma : raisers)
      if (cocycle_abs_det(gamma, zc) < 1.0 - 1e-9) {
        apply(gamma);
        raised = true;
        break;
      }
    if (!raised) {
      Rng rng(0x5EEDBA5Eu + static_cast<std::uint64_t>(n));
      for (int t = 0; t < 600; ++t) {
        const SymplecticMatrix gamma = random_integral_symplectic(n, 8, rng);
        if (cocycle_abs_det(gamma.mat(), zc) < 1.0 - 1e-9) {
          apply(gamma.mat());
          raised = true;
          break;
        }
      }
    }
    if (!raised) break;
  }

  Certificate cert;
  cert.conditions_checked = {"S.1(sampled)", "S.2", "S.3"};
  cert.iterations = iterations;
  cert.word_length = 8;
  cert.samples = 600;
  cert.seed = 0x5EEDBA5Eu + static_cast<std::uint64_t>(n);
  cert.search_bound = 5;
  cert.conventions = {"X translated to [-1/2, 1/2)"};

  const SymplecticMatrix reducer((total.array().round()).matrix());
  return SiegelReduction{SiegelPoint(zc), reducer, reducer.inverse(), cert};
}

RVec lattice_coords(const LatticeBasis& basis, const CMat& Zc) {
  const int m = basis.m, n = basis.omega.n();
  if (Zc.rows() != m || Zc.cols() != n)
    throw std::invalid_argument("lattice_coords: shape mismatch");
  const RMat y = basis.omega.imag_part();
  Eigen::PartialPivLU<RMat> lu(y);
  if (!(lu.rcond() > 1e-14)) throw std::runtime_error("lattice_coords: Im Omega near-singular");
  const RMat mu = lu.solve(Zc.imag().transpose()).transpose();  // Im Zc * Y^-1
  const RMat lambda = Zc.real() - mu * basis.omega.real_part();
  RVec coords(2 * m * n);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l) coords[k * n + l] = lambda(k, l);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l) coords[m * n + k * n + l] = mu(k, l);
  return coords;
}

CMat from_lattice_coords(const LatticeBasis& basis, const RVec& coords) {
  const int m = basis.m, n = basis.omega.n();
  if (coords.size() != 2 * m * n) throw std::invalid_argument("from_lattice_coords: size mismatch");
  RMat lambda(m, n), mu(m, n);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l) {
      lambda(k, l) = coords[k * n + l];
      mu(k, l) = coords[m * n + k * n + l];
    }
  return lambda.cast<cplx>() + mu.cast<cplx>() * basis.omega.Z();
}

JacobiReduction jacobi_reduce(const JacobiPoint& p) {
  const int n = p.n(), m = p.m();
  if (m < 1) throw std::invalid_argument("jacobi_reduce: m must be >= 1");
  const SiegelReduction sr = siegel_reduce(p.z());

  const JacobiGroupElement gamma(sr.reducer, HeisenbergElement::identity(n, m));
  const JacobiPoint p1 = act_jacobi(gamma, p);

  const LatticeBasis basis(p1.z(), m);
  const RVec coords = lattice_coords(basis, p1.W());
  // W -> W + lambda Z + mu shifts the f_kl Omega coefficients by lambda and
  // the f_kl coefficients by mu
  RMat lambda(m, n), mu(m, n);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l) {
      mu(k, l) = -std::floor(coords[k * n + l]);
      lambda(k, l) = -std::floor(coords[m * n + k * n + l]);
    }
  // integral kappa making kappa + mu tlambda symmetric
  const RMat kappa = -mu * lambda.transpose();
  const JacobiGroupElement shift(SymplecticMatrix::identity(n),
                                 HeisenbergElement(lambda, mu, kappa));
  const JacobiPoint reduced = act_jacobi(shift, p1);
  const JacobiGroupElement total = jacobi_mul(shift, gamma);

  Certificate cert = sr.certificate;
  cert.conventions.push_back("W lattice coordinates placed in [0,1)");
  return JacobiReduction{reduced, jacobi_inverse(total), cert};
}

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int binomial(int n, int k) {
  cpp_int r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// B_0 .. B_max by the defining recurrence, exact rationals
std::vector<cpp_rational> bernoulli_numbers(int max_index) {
  std::vector<cpp_rational> b(max_index + 1);
  b[0] = 1;
  for (int mth = 1; mth <= max_index; ++mth) {
    cpp_rational acc = 0;
    for (int j = 0; j < mth; ++j) acc += cpp_rational(binomial(mth + 1, j)) * b[j];
    b[mth] = -acc / (mth + 1);
  }
  return b;
}

}  // namespace

double siegel_volume(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("siegel_volume: need 1 <= n <= 20");
  const auto bern = bernoulli_numbers(2 * n);
  // zeta(2k) = r_k pi^(2k) with r_k = (-1)^(k+1) B_2k 2^(2k-1) / (2k)!
  cpp_rational product = 2;  // leading factor
  for (int k = 1; k <= n; ++k) {
    cpp_rational rk = bern[2 * k];
    rk *= cpp_int(1) << (2 * k - 1);
    cpp_int fact = 1;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    rk /= fact;
    if (k % 2 == 0) rk = -rk;
    cpp_int gam = 1;  // Gamma(k) = (k-1)!
    for (int i = 2; i < k; ++i) gam *= i;
    product *= rk * gam;
  }
  // vol = product * pi^(n(n+1)/2)
  const long double rational_part = product.convert_to<long double>();
  long double pi_power = 1.0L;
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < n * (n + 1) / 2; ++i) pi_power *= pi;
  const long double vol = rational_part * pi_power;
  if (!std::isfinite(static_cast<double>(vol)))
    throw std::overflow_error("siegel_volume: overflow");
  return static_cast<double>(vol);
}

}  // namespace sj
