#include "pstab/field.hpp"

#include <algorithm>
#include <cmath>

#include "pstab/errors.hpp"

namespace pstab {

namespace {

constexpr double kExponentTol = 1e-12;

class ConstantNode final : public FieldNode {
 public:
  explicit ConstantNode(double c) : c_(c) {}
  void derivs(double, int order, std::array<double, 4>& out) const override {
    out.fill(0.0);
    (void)order;
    out[0] = c_;
  }
  Positivity positivity() const override {
    if (c_ > 0.0) return Positivity::positive;
    if (c_ == 0.0) return Positivity::nonnegative;
    return Positivity::unknown;
  }

 private:
  double c_;
};

// c0 + c1 r^q
class PowerTermNode final : public FieldNode {
 public:
  PowerTermNode(double c0, double c1, double q) : c0_(c0), c1_(c1), q_(q) {
    if (q < 0.0) throw DomainError("power_term_field: exponent must be nonnegative");
  }

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    out.fill(0.0);
    out[0] = c0_ + ((c1_ == 0.0) ? 0.0 : c1_ * pow_or_limit(r, q_, 0));
    double coeff = c1_;
    double e = q_;
    for (int k = 1; k <= order; ++k) {
      coeff *= e;
      e -= 1.0;
      if (coeff == 0.0) break;  // polynomial of degree < k
      out[static_cast<size_t>(k)] = coeff * pow_or_limit(r, e, k);
    }
  }

  Positivity positivity() const override {
    if (c0_ > 0.0 && c1_ >= 0.0) return Positivity::positive;
    if (c0_ >= 0.0 && c1_ >= 0.0) return Positivity::nonnegative;
    return Positivity::unknown;
  }

 private:
  // r^e for the k-th derivative term; resolves the r = 0 limits.
  double pow_or_limit(double r, double e, int k) const {
    if (r > 0.0) return std::pow(r, e);
    if (e > kExponentTol) return 0.0;
    if (std::abs(e) <= kExponentTol) return 1.0;
    throw DegeneratePointError(
        "power term: derivative of order " + std::to_string(k) +
        " undefined at r = 0 for exponent q = " + std::to_string(q_));
  }

  double c0_, c1_, q_;
};

// (1 - (r/R)^2)^4 on [0, R], zero outside.
class BumpNode final : public FieldNode {
 public:
  explicit BumpNode(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw DomainError("bump_field: radius must be positive");
  }

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    out.fill(0.0);
    if (r >= radius_) return;
    const double u = r / radius_;
    const double t = 1.0 - u * u;
    out[0] = t * t * t * t;
    if (order >= 1) out[1] = -8.0 * u * t * t * t / radius_;
    if (order >= 2) out[2] = (-8.0 * t * t * t + 48.0 * u * u * t * t) / (radius_ * radius_);
    if (order >= 3)
      out[3] = (144.0 * u * t * t - 192.0 * u * u * u * t) / (radius_ * radius_ * radius_);
  }

  Positivity positivity() const override { return Positivity::nonnegative; }
  double support_radius() const override { return radius_; }

 private:
  double radius_;
};

class SumNode final : public FieldNode {
 public:
  SumNode(std::shared_ptr<const FieldNode> a, std::shared_ptr<const FieldNode> b)
      : a_(std::move(a)), b_(std::move(b)) {}

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    std::array<double, 4> tmp;
    a_->derivs(r, order, out);
    b_->derivs(r, order, tmp);
    for (int k = 0; k <= order; ++k) out[static_cast<size_t>(k)] += tmp[static_cast<size_t>(k)];
  }

  Positivity positivity() const override {
    const Positivity pa = a_->positivity();
    const Positivity pb = b_->positivity();
    if (pa == Positivity::unknown || pb == Positivity::unknown) return Positivity::unknown;
    if (pa == Positivity::positive || pb == Positivity::positive) return Positivity::positive;
    return Positivity::nonnegative;
  }

  double support_radius() const override {
    return std::max(a_->support_radius(), b_->support_radius());
  }
  bool reduced_precision() const override {
    return a_->reduced_precision() || b_->reduced_precision();
  }

 private:
  std::shared_ptr<const FieldNode> a_, b_;
};

class ScaleNode final : public FieldNode {
 public:
  ScaleNode(double c, std::shared_ptr<const FieldNode> f) : c_(c), f_(std::move(f)) {}

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    f_->derivs(r, order, out);
    for (int k = 0; k <= order; ++k) out[static_cast<size_t>(k)] *= c_;
  }

  Positivity positivity() const override {
    if (c_ > 0.0) return f_->positivity();
    if (c_ == 0.0) return Positivity::nonnegative;
    return Positivity::unknown;
  }

  double support_radius() const override { return f_->support_radius(); }
  bool reduced_precision() const override { return f_->reduced_precision(); }

 private:
  double c_;
  std::shared_ptr<const FieldNode> f_;
};

// f^alpha on a positive base.
class PowerNode final : public FieldNode {
 public:
  PowerNode(std::shared_ptr<const FieldNode> base, double alpha)
      : base_(std::move(base)), alpha_(alpha) {
    if (base_->positivity() != Positivity::positive)
      throw DomainError("pow_field: base must be a positive field");
  }

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    std::array<double, 4> b;
    base_->derivs(r, order, b);
    if (!(b[0] > 0.0))
      throw DomainError("pow_field: base evaluated nonpositive at r = " + std::to_string(r));
    const double a = alpha_;
    out.fill(0.0);
    out[0] = std::pow(b[0], a);
    if (order >= 1) out[1] = a * std::pow(b[0], a - 1.0) * b[1];
    if (order >= 2)
      out[2] = a * (a - 1.0) * std::pow(b[0], a - 2.0) * b[1] * b[1] +
               a * std::pow(b[0], a - 1.0) * b[2];
    if (order >= 3)
      out[3] = a * (a - 1.0) * (a - 2.0) * std::pow(b[0], a - 3.0) * b[1] * b[1] * b[1] +
               3.0 * a * (a - 1.0) * std::pow(b[0], a - 2.0) * b[1] * b[2] +
               a * std::pow(b[0], a - 1.0) * b[3];
  }

  Positivity positivity() const override { return Positivity::positive; }
  bool reduced_precision() const override { return base_->reduced_precision(); }

 private:
  std::shared_ptr<const FieldNode> base_;
  double alpha_;
};

// prefactor * f(rate * r)
class DilateNode final : public FieldNode {
 public:
  DilateNode(std::shared_ptr<const FieldNode> f, double rate, double prefactor)
      : f_(std::move(f)), rate_(rate), prefactor_(prefactor) {
    if (!(rate > 0.0)) throw DomainError("dilate: rate must be positive");
  }

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    f_->derivs(rate_ * r, order, out);
    double factor = prefactor_;
    for (int k = 0; k <= order; ++k) {
      out[static_cast<size_t>(k)] *= factor;
      factor *= rate_;
    }
  }

  Positivity positivity() const override {
    if (prefactor_ > 0.0) return f_->positivity();
    if (prefactor_ == 0.0) return Positivity::nonnegative;
    return Positivity::unknown;
  }

  double support_radius() const override {
    const double s = f_->support_radius();
    return std::isinf(s) ? s : s / rate_;
  }
  bool reduced_precision() const override { return f_->reduced_precision(); }

 private:
  std::shared_ptr<const FieldNode> f_;
  double rate_, prefactor_;
};

// Natural cubic spline on strictly increasing knots; zero past the last knot.
class SplineNode final : public FieldNode {
 public:
  SplineNode(std::vector<double> r, std::vector<double> v)
      : r_(std::move(r)), v_(std::move(v)) {
    const size_t n = r_.size();
    if (n < 3 || v_.size() != n)
      throw DomainError("spline_field: need at least 3 matching samples");
    for (size_t i = 1; i < n; ++i)
      if (!(r_[i] > r_[i - 1]))
        throw DomainError("spline_field: radii must be strictly increasing");
    // second derivatives, natural end conditions
    m_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      const double sig = (r_[i] - r_[i - 1]) / (r_[i + 1] - r_[i - 1]);
      const double den = sig * m_[i - 1] + 2.0;
      m_[i] = (sig - 1.0) / den;
      u[i] = (v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i]) -
             (v_[i] - v_[i - 1]) / (r_[i] - r_[i - 1]);
      u[i] = (6.0 * u[i] / (r_[i + 1] - r_[i - 1]) - sig * u[i - 1]) / den;
    }
    m_[n - 1] = 0.0;
    for (size_t k = n - 1; k-- > 0;) m_[k] = m_[k] * m_[k + 1] + u[k];
  }

  void derivs(double r, int order, std::array<double, 4>& out) const override {
    out.fill(0.0);
    if (r < r_.front())
      throw DomainError("spline field: evaluation below the first grid radius");
    if (r >= r_.back()) return;
    const size_t i = static_cast<size_t>(
        std::upper_bound(r_.begin(), r_.end(), r) - r_.begin() - 1);
    const double h = r_[i + 1] - r_[i];
    const double xa = (r_[i + 1] - r) / h;
    const double xb = (r - r_[i]) / h;
    out[0] = xa * v_[i] + xb * v_[i + 1] +
             ((xa * xa * xa - xa) * m_[i] + (xb * xb * xb - xb) * m_[i + 1]) * h * h / 6.0;
    if (order >= 1)
      out[1] = (v_[i + 1] - v_[i]) / h -
               (3.0 * xa * xa - 1.0) / 6.0 * h * m_[i] + (3.0 * xb * xb - 1.0) / 6.0 * h * m_[i + 1];
    if (order >= 2) out[2] = xa * m_[i] + xb * m_[i + 1];
    if (order >= 3) out[3] = (m_[i + 1] - m_[i]) / h;
  }

  Positivity positivity() const override { return Positivity::unknown; }
  double support_radius() const override { return r_.back(); }
  bool reduced_precision() const override { return true; }

 private:
  std::vector<double> r_, v_, m_;
};

}  // namespace

std::array<double, 4> RadialField::derivs(double r, int order) const {
  if (!node_) throw DomainError("RadialField: empty field");
  if (order < 0 || order > 3) throw DomainError("RadialField: derivative order must be 0..3");
  if (r < 0.0) throw DomainError("RadialField: negative radius");
  std::array<double, 4> out;
  node_->derivs(r, order, out);
  return out;
}

RadialField constant_field(double c) { return RadialField(std::make_shared<ConstantNode>(c)); }

RadialField power_term_field(double c0, double c1, double q) {
  return RadialField(std::make_shared<PowerTermNode>(c0, c1, q));
}

RadialField paraboloid_field(double c0, double c1, const Params& params) {
  return power_term_field(c0, c1, params.p_conj);
}

RadialField bump_field(double radius) { return RadialField(std::make_shared<BumpNode>(radius)); }

RadialField spline_field(std::vector<double> radii, std::vector<double> values) {
  return RadialField(std::make_shared<SplineNode>(std::move(radii), std::move(values)));
}

RadialField sum(const RadialField& a, const RadialField& b) {
  return RadialField(std::make_shared<SumNode>(a.node(), b.node()));
}

RadialField difference(const RadialField& a, const RadialField& b) {
  return sum(a, scale(-1.0, b));
}

RadialField scale(double c, const RadialField& f) {
  return RadialField(std::make_shared<ScaleNode>(c, f.node()));
}

RadialField pow_field(const RadialField& base, double alpha) {
  return RadialField(std::make_shared<PowerNode>(base.node(), alpha));
}

RadialField reciprocal(const RadialField& f) { return pow_field(f, -1.0); }

RadialField dilate(const RadialField& f, double rate, double prefactor) {
  return RadialField(std::make_shared<DilateNode>(f.node(), rate, prefactor));
}

double p_laplacian(const RadialField& f, const Params& params, double r) {
  const double p = params.p;
  if (r == 0.0) {
    const auto d = f.derivs(0.0, 2);
    if (d[1] != 0.0)
      throw DegeneratePointError("p_laplacian: r = 0 limit needs f'(0) = 0");
    if (p == 2.0) return params.n * d[2];
    if (p > 2.0) return 0.0;
    if (d[2] == 0.0) return 0.0;
    throw DegeneratePointError("p_laplacian: singular limit at r = 0 for p < 2");
  }
  const auto d = f.derivs(r, 2);
  const double g = d[1];
  if (g == 0.0) {
    if (p == 2.0) return d[2];
    if (p > 2.0) return 0.0;
    if (d[2] == 0.0) return 0.0;
    throw DegeneratePointError("p_laplacian: gradient vanishes at r = " + std::to_string(r));
  }
  const double w = std::pow(std::abs(g), p - 2.0);
  return (p - 1.0) * w * d[2] + (params.n - 1.0) * w * g / r;
}

}  // namespace pstab
