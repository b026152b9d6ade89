#include "sqe/tensor.hpp"

namespace sqe {

namespace {

std::size_t power(int n, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) {
    p *= static_cast<std::size_t>(n);
  }
  return p;
}

void check_compatible(const TensorField& a, const TensorField& b) {
  if (a.dim() != b.dim() || a.variance() != b.variance()) {
    throw std::invalid_argument("tensor shapes differ");
  }
}

}  // namespace

TensorField::TensorField(int dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)), components_(power(dim, static_cast<int>(variance_.size()))) {
  if (dim < 1) {
    throw std::invalid_argument("tensor dimension must be positive");
  }
}

TensorField::TensorField(int dim, std::vector<Variance> variance, std::vector<Expr> components)
    : dim_(dim), variance_(std::move(variance)), components_(std::move(components)) {
  if (components_.size() != power(dim, rank())) {
    throw std::invalid_argument("component count does not match n^rank");
  }
}

TensorField TensorField::scalar(int dim, Expr value) { return TensorField(dim, {}, {std::move(value)}); }

std::size_t TensorField::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != rank()) {
    throw std::out_of_range("wrong number of tensor indices");
  }
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) {
      throw std::out_of_range("tensor index out of range");
    }
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

std::vector<int> TensorField::index_of(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(rank()));
  for (int s = rank() - 1; s >= 0; --s) {
    idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

void TensorField::for_each(const std::function<void(const std::vector<int>&, const Expr&)>& f) const {
  for (std::size_t k = 0; k < components_.size(); ++k) {
    f(index_of(k), components_[k]);
  }
}

TensorField TensorField::generate(int dim, std::vector<Variance> variance,
                                  const std::function<Expr(const std::vector<int>&)>& f) {
  TensorField t(dim, std::move(variance));
  for (std::size_t k = 0; k < t.size(); ++k) {
    t.components_[k] = normalize(f(t.index_of(k)));
  }
  return t;
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  check_compatible(a, b);
  TensorField r = a;
  for (std::size_t k = 0; k < r.size(); ++k) {
    r.flat(k) = a.flat(k) + b.flat(k);
  }
  return r;
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  check_compatible(a, b);
  TensorField r = a;
  for (std::size_t k = 0; k < r.size(); ++k) {
    r.flat(k) = a.flat(k) - b.flat(k);
  }
  return r;
}

TensorField operator*(const Expr& s, const TensorField& t) {
  TensorField r = t;
  for (std::size_t k = 0; k < r.size(); ++k) {
    r.flat(k) = s * t.flat(k);
  }
  return r;
}

TensorField swap_slots(const TensorField& t, int a, int b) {
  std::vector<Variance> v = t.variance();
  std::swap(v[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]);
  return TensorField::generate(t.dim(), v, [&](const std::vector<int>& idx) {
    std::vector<int> j = idx;
    std::swap(j[static_cast<std::size_t>(a)], j[static_cast<std::size_t>(b)]);
    return t.at(j);
  });
}

TensorField outer(const TensorField& a, const TensorField& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("tensor dimensions differ");
  }
  std::vector<Variance> v = a.variance();
  v.insert(v.end(), b.variance().begin(), b.variance().end());
  auto ra = static_cast<std::size_t>(a.rank());
  return TensorField::generate(a.dim(), v, [&](const std::vector<int>& idx) {
    std::vector<int> ia(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(ra));
    std::vector<int> ib(idx.begin() + static_cast<std::ptrdiff_t>(ra), idx.end());
    return a.at(ia) * b.at(ib);
  });
}

TensorVerdict tensor_is_zero(const TensorField& t, const SampleRanges& ranges, const ZeroTestOptions& options) {
  TensorVerdict out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Expr& c = t.flat(k);
    if (normalize(c).is_zero()) {
      continue;
    }
    ++out.nonzero_normal_forms;
    ZeroVerdict v = is_zero(c, ranges, options);
    out.max_abs = std::max(out.max_abs, v.max_abs);
    if (!v.vanishes()) {
      if (out.failing == 0) {
        out.witness_index = t.index_of(k);
        out.witness = v;
      }
      ++out.failing;
      out.vanishes = false;
    }
  }
  return out;
}

}  // namespace sqe
