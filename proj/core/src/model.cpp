#include "gsa/model.hpp"

#include <algorithm>

#include "gsa/dense.hpp"

namespace gsa {

namespace {

MatC pauli(char which) {
  MatC m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0); break;
    case 'z': m << 1, 0, 0, -1; break;
    default: throw ArgumentError("unknown Pauli label");
  }
  return m;
}

// Matrix-free y += H_window x using the local terms; site `first` is the
// most significant index of x.
void apply_window(const std::vector<MatC>& terms, int d, int first, int last,
                  const VecC& x, VecC& y) {
  int m = last - first + 1;
  y.setZero();
  for (int t = first; t <= last - 1; ++t) {
    const MatC& op = terms[t - 1];
    Eigen::Index left = dense::ipow(d, t - first);
    Eigen::Index right = dense::ipow(d, last - t - 1);
    Eigen::Index dd = d * d;
    for (Eigen::Index l = 0; l < left; ++l)
      for (Eigen::Index r = 0; r < right; ++r) {
        Eigen::Index base = l * dd * right + r;
        for (Eigen::Index a = 0; a < dd; ++a) {
          cplx acc = 0.0;
          for (Eigen::Index b = 0; b < dd; ++b)
            acc += op(a, b) * x(base + b * right);
          y(base + a * right) += acc;
        }
      }
  }
  (void)m;
}

double lanczos_ground(const std::vector<MatC>& terms, int d, int first,
                      int last, double tol) {
  Eigen::Index dim = dense::ipow(d, last - first + 1);
  DetRng rng(0x1a2cfULL + static_cast<std::uint64_t>(first * 131 + last));
  VecC v = dense::random_unit(dim, rng);
  std::vector<VecC> basis{v};
  std::vector<double> alpha, beta;
  VecC w(dim);
  double prev = 1e300;
  int max_iter = static_cast<int>(std::min<Eigen::Index>(dim, 400));
  for (int it = 0; it < max_iter; ++it) {
    apply_window(terms, d, first, last, basis.back(), w);
    double a = (basis.back().adjoint() * w)(0).real();
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    for (const auto& b : basis) w -= (b.adjoint() * w)(0) * b;  // full reorth
    double nb = w.norm();

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(alpha.size(), alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      tri(k, k) = alpha[k];
      if (k + 1 < alpha.size()) tri(k, k + 1) = tri(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    double cur = es.eigenvalues()(0);
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur)) && it > 8)
      return cur;
    prev = cur;
    if (nb < 1e-13) return cur;  // invariant subspace hit
    beta.push_back(nb);
    basis.push_back(w / nb);
  }
  return prev;
}

}  // namespace

StandardHamiltonian::StandardHamiltonian(int n, int d,
                                         std::vector<MatC> local_terms,
                                         StandardizationMeta meta)
    : n_(n), d_(d), terms_(std::move(local_terms)), meta_(std::move(meta)) {
  if (n_ < 2) throw ArgumentError("chain needs at least two sites");
  if (d_ < 2 || d_ > 4) throw ArgumentError("physical dimension must be 2..4");
  if (static_cast<int>(terms_.size()) != n_ - 1)
    throw ArgumentError("need n-1 local terms");
  for (const auto& t : terms_) {
    if (t.rows() != d_ * d_ || t.cols() != d_ * d_)
      throw ShapeError("local term has wrong dimension");
    if (!dense::is_hermitian(t)) throw ArgumentError("non-Hermitian local term");
  }
  mpo_ = Mpo::from_two_site_terms(terms_, n_, d_, true);
}

Mpo StandardHamiltonian::window_mpo(int first, int last) const {
  if (first < 1 || last > n_ || last < first)
    throw ArgumentError("window out of range");
  if (last == first) {
    // single-site window holds no two-site term: the zero operator
    std::vector<OpTensor> ts(1);
    ts[0].d = d_;
    ts[0].w.assign(d_ * d_, MatC::Zero(1, 1));
    return Mpo(std::move(ts), d_, true);
  }
  std::vector<MatC> sub(terms_.begin() + (first - 1), terms_.begin() + (last - 1));
  return Mpo::from_two_site_terms(sub, last - first + 1, d_, true);
}

Mpo StandardHamiltonian::prefix_mpo(int i) const {
  if (i < 1 || i > n_) throw ArgumentError("prefix out of range");
  std::vector<MatC> padded(terms_.begin(), terms_.begin() + (i - 1));
  padded.resize(n_ - 1, MatC::Zero(d_ * d_, d_ * d_));
  return Mpo::from_two_site_terms(padded, n_, d_, true);
}

MatC StandardHamiltonian::window_dense(int first, int last) const {
  std::vector<MatC> sub(terms_.begin() + (first - 1), terms_.begin() + (last - 1));
  return dense::chain_from_terms(sub, last - first + 1, d_);
}

Mpo Partition::left_mpo() const {
  return hamiltonian->window_mpo(1, cut);
}

MatC Partition::left_dense() const {
  if (cut < 2) {
    Eigen::Index dim = dense::ipow(hamiltonian->d(), std::max(cut, 1));
    return MatC::Zero(dim, dim);
  }
  return hamiltonian->window_dense(1, cut);
}

MatC Partition::middle_dense() const {
  return dense::embed(hamiltonian->local_terms()[cut - 1], hamiltonian->n(),
                      hamiltonian->d(), cut, 2);
}

MatC Partition::right_dense() const {
  if (cut > hamiltonian->n() - 2) {
    Eigen::Index dim = dense::ipow(hamiltonian->d(), hamiltonian->n() - cut);
    return MatC::Zero(dim, dim);
  }
  return hamiltonian->window_dense(cut + 1, hamiltonian->n());
}

StandardHamiltonian standardize(const std::vector<MatC>& raw_terms, int n, int d) {
  if (static_cast<int>(raw_terms.size()) != n - 1)
    throw ArgumentError("need n-1 raw terms");
  for (const auto& t : raw_terms)
    if (!dense::is_hermitian(t)) throw ArgumentError("non-Hermitian raw term");

  bool already_standard = true;
  std::vector<double> mins(raw_terms.size()), maxs(raw_terms.size());
  for (std::size_t k = 0; k < raw_terms.size(); ++k) {
    auto eg = dense::eigh(raw_terms[k]);
    mins[k] = eg.values.minCoeff();
    maxs[k] = eg.values.maxCoeff();
    if (mins[k] < -1e-12 || maxs[k] > 1.0 + 1e-12) already_standard = false;
  }

  StandardizationMeta meta;
  meta.term_shifts.assign(raw_terms.size(), 0.0);
  std::vector<MatC> terms = raw_terms;
  if (!already_standard) {
    double scale = 0.0;
    for (std::size_t k = 0; k < raw_terms.size(); ++k) {
      meta.term_shifts[k] = mins[k];
      scale = std::max(scale, maxs[k] - mins[k]);
    }
    if (scale <= 0.0) scale = 1.0;
    meta.scale = scale;
    Eigen::Index dd = d * d;
    for (std::size_t k = 0; k < terms.size(); ++k)
      terms[k] = (raw_terms[k] - mins[k] * MatC::Identity(dd, dd)) / scale;
  }
  return StandardHamiltonian(n, d, std::move(terms), std::move(meta));
}

StandardHamiltonian make_model(const std::string& name, int n,
                               const ModelParams& params) {
  MatC x = pauli('x'), y = pauli('y'), z = pauli('z');
  MatC id = MatC::Identity(2, 2);
  MatC zz = dense::kron(z, z);

  if (name == "ising_zero_field") {
    MatC term = 0.5 * (MatC::Identity(4, 4) - zz);
    return standardize(std::vector<MatC>(n - 1, term), n, 2);
  }
  if (name == "ising_transverse") {
    double h = params.get("h", 1.0);
    std::vector<MatC> terms;
    for (int k = 1; k <= n - 1; ++k) {
      double wl = (k == 1) ? 1.0 : 0.5;
      double wr = (k == n - 1) ? 1.0 : 0.5;
      MatC t = -zz - h * (wl * dense::kron(x, id) + wr * dense::kron(id, x));
      terms.push_back(t);
    }
    return standardize(terms, n, 2);
  }
  if (name == "heisenberg") {
    double j = params.get("J", 1.0);
    MatC t = 0.25 * j *
             (dense::kron(x, x) + dense::kron(y, y) + zz);
    return standardize(std::vector<MatC>(n - 1, t), n, 2);
  }
  if (name == "ising_random_perturbed") {
    double lambda = params.get("lambda", 0.05);
    DetRng rng(params.seed);
    std::vector<MatC> terms;
    for (int k = 1; k <= n - 1; ++k) {
      MatC base = 0.5 * (MatC::Identity(4, 4) - zz);
      terms.push_back(base + lambda * dense::random_hermitian(4, rng));
    }
    return standardize(terms, n, 2);
  }
  throw ArgumentError("unknown model: " + name);
}

double window_ground_energy(const StandardHamiltonian& h, int first, int last,
                            double tol) {
  if (last - first < 1) return 0.0;  // single-site window: zero operator
  Eigen::Index dim = dense::ipow(h.d(), last - first + 1);
  if (dim <= (1 << 12)) {
    auto eg = dense::eigh(h.window_dense(first, last));
    return eg.values.minCoeff();
  }
  return lanczos_ground(h.local_terms(), h.d(), first, last, tol);
}

Partition partition(const StandardHamiltonian& h, int cut) {
  if (cut < 1 || cut > h.n() - 1) throw ArgumentError("cut out of range");
  Partition p;
  p.cut = cut;
  p.hamiltonian = &h;
  p.eps_left = (cut >= 2) ? window_ground_energy(h, 1, cut) : 0.0;
  p.eps_right = (cut <= h.n() - 2) ? window_ground_energy(h, cut + 1, h.n()) : 0.0;
  return p;
}

}  // namespace gsa
