#include "rtmix/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rtmix {

namespace {

constexpr int kMaxDims = 4;
constexpr int kMaxOrder = 6;
constexpr int kBase = kMaxOrder + 1;

int encode(const MultiIndex& a) {
  int code = 0;
  for (int k = kMaxDims - 1; k >= 0; --k) code = code * kBase + a[k];
  return code;
}

int total(const MultiIndex& a) { return a[0] + a[1] + a[2] + a[3]; }

}  // namespace

JetSpace::JetSpace(int dims, int order) : dims_(dims), order_(order) {
  if (dims < 1 || dims > kMaxDims || order < 0 || order > kMaxOrder) {
    throw std::invalid_argument("JetSpace supports 1..4 variables and order 0..6");
  }
  int span = 1;
  for (int k = 0; k < kMaxDims; ++k) span *= kBase;
  lookup_.assign(static_cast<std::size_t>(span), -1);

  // Graded order so that index 0 is the constant term.
  for (int deg = 0; deg <= order; ++deg) {
    MultiIndex a{0, 0, 0, 0};
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == dims - 1) {
        a[var] = left;
        lookup_[static_cast<std::size_t>(encode(a))] = static_cast<int>(exps_.size());
        exps_.push_back(a);
        a[var] = 0;
        return;
      }
      for (int k = left; k >= 0; --k) {
        a[var] = k;
        self(self, var + 1, left - k);
      }
      a[var] = 0;
    };
    rec(rec, 0, deg);
  }

  for (const auto& e : exps_) {
    double f = 1.0;
    for (int k : e)
      for (int j = 2; j <= k; ++j) f *= j;
    fact_.push_back(f);
  }

  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      MultiIndex s{};
      for (int k = 0; k < kMaxDims; ++k) s[k] = exps_[i][k] + exps_[j][k];
      if (total(s) <= order) products_.push_back({i, j, index(s)});
    }
  }
}

int JetSpace::index(const MultiIndex& alpha) const {
  for (int k = 0; k < kMaxDims; ++k) {
    if (alpha[k] < 0) return -1;
    if (k >= dims_ && alpha[k] != 0) return -1;
  }
  if (total(alpha) > order_) return -1;
  return lookup_[static_cast<std::size_t>(encode(alpha))];
}

std::shared_ptr<const JetSpace> JetSpace::get(int dims, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dims, order}];
  if (!slot) slot = std::make_shared<const JetSpace>(dims, order);
  return slot;
}

Jet::Jet(std::shared_ptr<const JetSpace> space)
    : space_(std::move(space)), c_(static_cast<std::size_t>(space_->size()), 0.0) {}

Jet Jet::constant(std::shared_ptr<const JetSpace> space, double value) {
  Jet j(std::move(space));
  j.c_[0] = value;
  return j;
}

Jet Jet::affine(std::shared_ptr<const JetSpace> space, double value, const std::vector<double>& grad) {
  Jet j(std::move(space));
  j.c_[0] = value;
  if (j.space_->order() >= 1) {
    for (int k = 0; k < j.space_->dims(); ++k) {
      MultiIndex a{0, 0, 0, 0};
      a[k] = 1;
      j.c_[static_cast<std::size_t>(j.space_->index(a))] = grad[k];
    }
  }
  return j;
}

double Jet::derivative(const MultiIndex& alpha) const {
  const int i = space_->index(alpha);
  if (i < 0) throw std::out_of_range("derivative order exceeds jet order");
  return space_->factorial(i) * c_[i];
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(a.space_);
  for (const auto& p : a.space_->products()) {
    out.c_[p.out] += a.c_[p.a] * b.c_[p.b];
  }
  return out;
}

Jet Jet::compose(const std::vector<double>& taylor, const Jet& u) {
  Jet delta = u;
  delta.c_[0] = 0.0;
  const int top = std::min(static_cast<int>(taylor.size()) - 1, u.space_->order());
  Jet acc = Jet::constant(u.space_, top >= 0 ? taylor[top] : 0.0);
  for (int k = top - 1; k >= 0; --k) {
    acc = acc * delta;
    acc.c_[0] += taylor[k];
  }
  return acc;
}

}  // namespace rtmix
