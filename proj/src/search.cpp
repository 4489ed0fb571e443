#include "xprod/search.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <thread>

namespace xprod {

namespace {

using M = Matrix<Zp>;
using V = Vector<Zp>;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

/// All maps domain -> codomain sending each constrained vector to its
/// prescribed image, parametrised by the free block Z.
class Family {
 public:
  Family(const Field& f, std::string name, Shape domain, Shape codomain,
         const std::vector<std::pair<V, V>>& constraints, const std::optional<TensorMap<Zp>>& frozen)
      : field_(f), name_(std::move(name)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (frozen) {
      if (frozen->domain().total() != domain_.total() || frozen->codomain().total() != codomain_.total())
        throw Error(ErrorKind::ShapeMismatch, "frozen " + name_ + " has the wrong shape");
      frozen_ = frozen->reshaped(domain_, codomain_);
      return;
    }
    const std::size_t n = domain_.total();
    M kept_cols(static_cast<Eigen::Index>(n), 0);
    std::vector<const V*> images;
    std::size_t r = 0;
    for (const auto& [x, y] : constraints) {
      M trial(kept_cols.rows(), kept_cols.cols() + 1);
      trial << kept_cols, x;
      if (rank<Zp>(f, trial) > r) {
        kept_cols = trial;
        images.push_back(&y);
        ++r;
      }
    }
    const auto [basis, count] = complete_to_basis<Zp>(f, kept_cols);
    (void)count;
    qinv_ = *inverse<Zp>(f, basis);
    rows_ = codomain_.total();
    free_ = n - r;
    y_ = zero_matrix<Zp>(f, rows_, r);
    for (std::size_t j = 0; j < r; ++j) y_.col(static_cast<Eigen::Index>(j)) = *images[j];
    // Dependent constraints hold for every Z or for none.
    const M x0 = build(std::vector<std::uint32_t>(rows_ * free_, 0));
    consistent_ = std::all_of(constraints.begin(), constraints.end(),
                              [&](const auto& c) { return V(x0 * c.first) == c.second; });
  }

  const std::string& name() const { return name_; }
  std::size_t digits() const { return frozen_ ? 0 : rows_ * free_; }

  std::uint64_t count() const {
    if (frozen_) return 1;
    if (!consistent_) return 0;
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < digits(); ++i) c = saturating_mul(c, field_.modulus());
    return c;
  }

  TensorMap<Zp> at(std::uint64_t index) const {
    std::vector<std::uint32_t> d(digits());
    for (std::size_t i = d.size(); i-- > 0;) {
      d[i] = static_cast<std::uint32_t>(index % field_.modulus());
      index /= field_.modulus();
    }
    return from_digits(d);
  }

  TensorMap<Zp> from_digits(const std::vector<std::uint32_t>& d) const {
    if (frozen_) return *frozen_;
    return TensorMap<Zp>(domain_, codomain_, build(d));
  }

  TensorMap<Zp> placeholder() const { return zero_map<Zp>(field_, domain_, codomain_); }

 private:
  M build(const std::vector<std::uint32_t>& d) const {
    M yz(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(y_.cols() + free_));
    yz.leftCols(y_.cols()) = y_;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < free_; ++j)
        yz(static_cast<Eigen::Index>(i), y_.cols() + static_cast<Eigen::Index>(j)) =
            Zp::bound(d[i * free_ + j], field_.modulus());
    return yz * qinv_;
  }

  Field field_;
  std::string name_;
  Shape domain_, codomain_;
  std::optional<TensorMap<Zp>> frozen_;
  M y_, qinv_;
  std::size_t rows_ = 0, free_ = 0;
  bool consistent_ = true;
};

using Key = std::vector<std::uint32_t>;

Key key_of(const TwoSidedData<Zp>& d) {
  Key k;
  for (const auto* m : {&d.R1(), &d.R2(), &d.R3(), &d.E()})
    for (Eigen::Index j = 0; j < m->matrix().cols(); ++j)
      for (Eigen::Index i = 0; i < m->matrix().rows(); ++i)
        k.push_back(static_cast<std::uint32_t>(m->matrix()(i, j).residue()));
  return k;
}

bool passes(const TwoSidedData<Zp>& d, std::initializer_list<const char*> labels) {
  for (const char* l : labels)
    if (!check_twosided_condition(d, l).pass) return false;
  return true;
}

/// Runs `work(i)` for i in [0, n) on `threads` workers, each collecting into
/// its own list; the lists are concatenated in worker order.
template <class Work>
std::vector<TwoSidedData<Zp>> parallel_collect(std::uint64_t n, unsigned threads, Work work) {
  threads = std::max(1u, threads);
  if (n < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(1, n));
  std::vector<std::vector<TwoSidedData<Zp>>> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  const auto run = [&](unsigned t) {
    try {
      const std::uint64_t lo = n * t / threads, hi = n * (t + 1) / threads;
      for (std::uint64_t i = lo; i < hi; ++i)
        if (auto d = work(i)) parts[t].push_back(std::move(*d));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<TwoSidedData<Zp>> out;
  for (auto& p : parts)
    for (auto& d : p) out.push_back(std::move(d));
  return out;
}

std::vector<TwoSidedData<Zp>> canonical(std::vector<TwoSidedData<Zp>> found) {
  std::vector<std::pair<Key, std::size_t>> keys;
  for (std::size_t i = 0; i < found.size(); ++i) keys.emplace_back(key_of(found[i]), i);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             keys.end());
  std::vector<TwoSidedData<Zp>> out;
  for (const auto& [k, i] : keys) out.push_back(found[i]);
  return out;
}

}  // namespace

SearchResult search_fp(const SearchSpec& spec, const FinAlgebra<Zp>& A, const PointedSpace<Zp>& Vs,
                       const FinAlgebra<Zp>& C, unsigned threads) {
  const Field& f = A.field();
  if (!f.is_prime() || Vs.field() != f || C.field() != f)
    throw Error(ErrorKind::FieldMismatch, "search needs A, V and C over one prime field");
  for (const auto& [name, m] : spec.frozen)
    if (name != "R1" && name != "R2" && name != "R3" && name != "E")
      throw Error(ErrorKind::Precondition, "unknown frozen map \"" + name + "\"");
  const auto frozen = [&](const char* name) -> std::optional<TensorMap<Zp>> {
    auto it = spec.frozen.find(name);
    if (it == spec.frozen.end()) return std::nullopt;
    return it->second;
  };

  const std::size_t na = A.dim(), nv = Vs.dim(), nc = C.dim();
  const V &uA = A.unit(), &uV = Vs.unit(), &uC = C.unit();
  const auto e = [&](std::size_t n, std::size_t i) { return basis_vector<Zp>(f, n, i); };

  std::vector<std::pair<V, V>> k1, k2, k3, kE;
  for (std::size_t a = 0; a < na; ++a) k1.emplace_back(kron(uV, e(na, a)), kron(e(na, a), uV));
  for (std::size_t v = 0; v < nv; ++v) k1.emplace_back(kron(e(nv, v), uA), kron(uA, e(nv, v)));
  for (std::size_t v = 0; v < nv; ++v) k2.emplace_back(kron(uC, e(nv, v)), kron(e(nv, v), uC));
  for (std::size_t c = 0; c < nc; ++c) k2.emplace_back(kron(e(nc, c), uV), kron(uV, e(nc, c)));
  for (std::size_t a = 0; a < na; ++a) k3.emplace_back(kron(uC, e(na, a)), kron(e(na, a), uC));
  for (std::size_t c = 0; c < nc; ++c) k3.emplace_back(kron(e(nc, c), uA), kron(uA, e(nc, c)));
  for (std::size_t v = 0; v < nv; ++v) {
    const V image = kron(kron(uA, e(nv, v)), uC);
    kE.emplace_back(kron(uV, e(nv, v)), image);
    kE.emplace_back(kron(e(nv, v), uV), image);
  }

  const Family F1(f, "R1", Shape{nv, na}, Shape{na, nv}, k1, frozen("R1"));
  const Family F2(f, "R2", Shape{nc, nv}, Shape{nv, nc}, k2, frozen("R2"));
  const Family F3(f, "R3", Shape{nc, na}, Shape{na, nc}, k3, frozen("R3"));
  const Family FE(f, "E", Shape{nv, nv}, Shape{na, nv, nc}, kE, frozen("E"));

  SearchResult result;
  result.space = saturating_mul(saturating_mul(F1.count(), F2.count()), saturating_mul(F3.count(), FE.count()));

  const auto data = [&](TensorMap<Zp> r1, TensorMap<Zp> r2, TensorMap<Zp> r3, TensorMap<Zp> E) {
    return TwoSidedData<Zp>(A, Vs, C, std::move(r1), std::move(r2), std::move(r3), std::move(E));
  };

  if (spec.mode == SearchMode::Randomized) {
    std::mt19937_64 rng(spec.seed);
    const auto draw = [&](const Family& fam) {
      std::vector<std::uint32_t> d(fam.digits());
      for (auto& x : d) x = static_cast<std::uint32_t>(rng() % f.modulus());
      return d;
    };
    std::vector<std::array<std::vector<std::uint32_t>, 4>> samples;
    if (result.space != 0)
      for (std::uint64_t s = 0; s < spec.budget; ++s) samples.push_back({draw(F1), draw(F2), draw(F3), draw(FE)});
    result.solutions = canonical(parallel_collect(
        samples.size(), threads, [&](std::uint64_t i) -> std::optional<TwoSidedData<Zp>> {
          const auto& s = samples[i];
          auto d = data(F1.from_digits(s[0]), F2.from_digits(s[1]), F3.from_digits(s[2]), FE.from_digits(s[3]));
          if (!passes(d, {"unit-R1", "unit-R2", "twR31", "unit-E", "twR32", "twR33", "equiv1", "equiv2", "equiv3",
                          "equiv4", "equiv5", "equiv6"}))
            return std::nullopt;
          return d;
        }));
    return result;
  }

  if (result.space > spec.budget)
    throw Error(ErrorKind::SearchSpaceTooLarge, std::to_string(result.space) +
                                                    " candidate tuples exceed the budget of " +
                                                    std::to_string(spec.budget));
  if (result.space == 0) return result;

  const auto p1 = F1.placeholder(), p2 = F2.placeholder(), p3 = F3.placeholder(), pE = FE.placeholder();
  std::vector<TensorMap<Zp>> r3s, r1s, r2s;
  for (std::uint64_t i = 0; i < F3.count(); ++i) {
    auto m = F3.at(i);
    if (passes(data(p1, p2, m, pE), {"twR31", "twR32", "twR33"})) r3s.push_back(std::move(m));
  }
  for (std::uint64_t i = 0; i < F1.count(); ++i) {
    auto m = F1.at(i);
    if (passes(data(m, p2, p3, pE), {"unit-R1", "equiv1"})) r1s.push_back(std::move(m));
  }
  for (std::uint64_t i = 0; i < F2.count(); ++i) {
    auto m = F2.at(i);
    if (passes(data(p1, m, p3, pE), {"unit-R2", "equiv2"})) r2s.push_back(std::move(m));
  }
  struct Triple {
    const TensorMap<Zp>* r1;
    const TensorMap<Zp>* r2;
    const TensorMap<Zp>* r3;
  };
  std::vector<Triple> triples;
  for (const auto& a : r1s)
    for (const auto& b : r2s)
      for (const auto& c : r3s)
        if (passes(data(a, b, c, pE), {"equiv3"})) triples.push_back({&a, &b, &c});

  const std::uint64_t ne = FE.count();
  result.solutions = canonical(parallel_collect(
      saturating_mul(triples.size(), ne), threads, [&](std::uint64_t i) -> std::optional<TwoSidedData<Zp>> {
        const auto& t = triples[i / ne];
        auto d = data(*t.r1, *t.r2, *t.r3, FE.at(i % ne));
        if (!passes(d, {"unit-E", "equiv4", "equiv5", "equiv6"})) return std::nullopt;
        if (!check_twosided(d).all_pass())
          throw Error(ErrorKind::InternalMismatch, "staged search accepted a failing candidate");
        return d;
      }));
  return result;
}

}  // namespace xprod
