#include "percolab/radius_law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace percolab {

double ipow(double x, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// x^q with the exact product path when q is a small integer.
double rpow(double x, double q) {
  if (q == std::floor(q) && q >= 0.0 && q <= 32.0) return ipow(x, static_cast<int>(q));
  return std::pow(x, q);
}

double fmt_num_check(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("radius law: bad number '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("radius law: bad number '" + s + "'");
  return v;
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double comp_tail_prob(const RadiusLaw::Component& c, double alpha) {
  using Kind = RadiusLaw::Kind;
  switch (c.kind) {
    case Kind::Constant: return c.a >= alpha ? 1.0 : 0.0;
    case Kind::Uniform:
      if (alpha <= c.a) return 1.0;
      if (alpha >= c.b) return 0.0;
      return (c.b - alpha) / (c.b - c.a);
    case Kind::Pareto:
      return alpha <= c.b ? 1.0 : std::pow(c.b / alpha, c.a);
  }
  return 0.0;
}

}  // namespace

RadiusLaw RadiusLaw::constant(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("constant law: need rho > 0");
  RadiusLaw law;
  law.weights_ = {1.0};
  law.comps_ = {{Kind::Constant, rho, 0.0}};
  return law;
}

RadiusLaw RadiusLaw::uniform(double lo, double hi) {
  if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("uniform law: need 0 < a < b");
  RadiusLaw law;
  law.weights_ = {1.0};
  law.comps_ = {{Kind::Uniform, lo, hi}};
  return law;
}

RadiusLaw RadiusLaw::pareto(double gamma, double r_min) {
  if (!(gamma > 0.0) || !(r_min > 0.0))
    throw std::invalid_argument("pareto law: need gamma > 0 and r_min > 0");
  RadiusLaw law;
  law.weights_ = {1.0};
  law.comps_ = {{Kind::Pareto, gamma, r_min}};
  return law;
}

RadiusLaw RadiusLaw::mixture(std::vector<std::pair<double, RadiusLaw>> parts) {
  if (parts.empty()) throw std::invalid_argument("mixture law: no components");
  double total = 0.0;
  for (const auto& [w, sub] : parts) {
    if (!(w > 0.0)) throw std::invalid_argument("mixture law: weights must be positive");
    total += w;
  }
  RadiusLaw law;
  for (const auto& [w, sub] : parts)
    for (std::size_t i = 0; i < sub.comps_.size(); ++i) {
      law.weights_.push_back(w / total * sub.weights_[i]);
      law.comps_.push_back(sub.comps_[i]);
    }
  return law;
}

RadiusLaw RadiusLaw::parse(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
      if (i == s.size() || s[i] == sep) {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    return out;
  };

  if (spec.rfind("mix:", 0) == 0) {
    std::vector<std::pair<double, RadiusLaw>> parts;
    for (const auto& item : split(spec.substr(4), ',')) {
      const auto star = item.find('*');
      if (star == std::string::npos)
        throw std::invalid_argument("radius law: mixture component needs W*SPEC, got '" + item + "'");
      const std::string sub = item.substr(star + 1);
      if (sub.rfind("mix:", 0) == 0)
        throw std::invalid_argument("radius law: nested mixtures are not supported");
      parts.emplace_back(fmt_num_check(item.substr(0, star)), parse(sub));
    }
    return mixture(std::move(parts));
  }

  const auto f = split(spec, ':');
  if (f.size() == 2 && f[0] == "constant") return constant(fmt_num_check(f[1]));
  if (f.size() == 3 && f[0] == "uniform") return uniform(fmt_num_check(f[1]), fmt_num_check(f[2]));
  if (f.size() == 3 && f[0] == "pareto") return pareto(fmt_num_check(f[1]), fmt_num_check(f[2]));
  throw std::invalid_argument("radius law: cannot parse '" + spec + "'");
}

std::string RadiusLaw::to_spec() const {
  auto one = [](const Component& c) -> std::string {
    switch (c.kind) {
      case Kind::Constant: return "constant:" + num17(c.a);
      case Kind::Uniform: return "uniform:" + num17(c.a) + ":" + num17(c.b);
      case Kind::Pareto: return "pareto:" + num17(c.a) + ":" + num17(c.b);
    }
    return {};
  };
  if (comps_.size() == 1) return one(comps_[0]);
  std::string out = "mix:";
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) out += ',';
    out += num17(weights_[i]) + "*" + one(comps_[i]);
  }
  return out;
}

double RadiusLaw::sample(Rng& rng) const {
  std::size_t pick = 0;
  if (comps_.size() > 1) {
    double u = rng.uniform();
    double acc = 0.0;
    for (; pick + 1 < comps_.size(); ++pick) {
      acc += weights_[pick];
      if (u < acc) break;
    }
  }
  const Component& c = comps_[pick];
  switch (c.kind) {
    case Kind::Constant: return c.a;
    case Kind::Uniform: return c.a + (c.b - c.a) * rng.uniform();
    case Kind::Pareto: return c.b * std::pow(rng.uniform_pos(), -1.0 / c.a);
  }
  return 0.0;
}

double RadiusLaw::sample_at_least(double t, Rng& rng) const {
  std::size_t pick = 0;
  if (comps_.size() > 1) {
    double total = 0.0;
    std::vector<double> w(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      w[i] = weights_[i] * comp_tail_prob(comps_[i], t);
      total += w[i];
    }
    if (!(total > 0.0)) throw std::invalid_argument("sample_at_least: zero tail mass");
    double u = rng.uniform() * total;
    double acc = 0.0;
    for (; pick + 1 < comps_.size(); ++pick) {
      acc += w[pick];
      if (u < acc) break;
    }
  }
  const Component& c = comps_[pick];
  switch (c.kind) {
    case Kind::Constant:
      if (c.a < t) throw std::invalid_argument("sample_at_least: zero tail mass");
      return c.a;
    case Kind::Uniform: {
      const double lo = std::max(c.a, t);
      if (!(lo < c.b)) throw std::invalid_argument("sample_at_least: zero tail mass");
      return lo + (c.b - lo) * rng.uniform();
    }
    case Kind::Pareto:
      return std::max(c.b, t) * std::pow(rng.uniform_pos(), -1.0 / c.a);
  }
  return 0.0;
}

double RadiusLaw::tail_prob(double alpha) const {
  double p = 0.0;
  for (std::size_t i = 0; i < comps_.size(); ++i) p += weights_[i] * comp_tail_prob(comps_[i], alpha);
  return p;
}

namespace {

// Integral of r^q against one component measure over [a, b[.
double comp_interval_moment(const RadiusLaw::Component& c, double q, double a, double b) {
  using Kind = RadiusLaw::Kind;
  if (!(a < b)) return 0.0;
  switch (c.kind) {
    case Kind::Constant:
      return (a <= c.a && c.a < b) ? rpow(c.a, q) : 0.0;
    case Kind::Uniform: {
      const double lo = std::max(a, c.a);
      const double hi = std::min(b, c.b);
      if (!(lo < hi)) return 0.0;
      return (std::pow(hi, q + 1.0) - std::pow(lo, q + 1.0)) / ((q + 1.0) * (c.b - c.a));
    }
    case Kind::Pareto: {
      const double gamma = c.a;
      const double rm = c.b;
      const double lo = std::max(a, rm);
      if (!(lo < b)) return 0.0;
      const double scale = gamma * std::pow(rm, gamma);
      if (b == kInf) {
        if (q >= gamma) return kInf;
        return scale * std::pow(lo, q - gamma) / (gamma - q);
      }
      if (q == gamma) return scale * std::log(b / lo);
      return scale * (std::pow(b, q - gamma) - std::pow(lo, q - gamma)) / (q - gamma);
    }
  }
  return 0.0;
}

}  // namespace

double RadiusLaw::interval_moment(double q, double a, double b) const {
  double total = 0.0;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    const double m = comp_interval_moment(comps_[i], q, a, b);
    if (m == kInf) return kInf;
    total += weights_[i] * m;
  }
  return total;
}

double RadiusLaw::plus_power_moment(double shift, int d, double cut) const {
  double total = 0.0;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    const Component& c = comps_[i];
    double m = 0.0;
    switch (c.kind) {
      case Kind::Constant:
        m = (c.a > shift && c.a < cut) ? ipow(c.a - shift, d) : 0.0;
        break;
      case Kind::Uniform: {
        const double lo = std::max(c.a, shift);
        const double hi = std::min(c.b, cut);
        if (lo < hi)
          m = (ipow(hi - shift, d + 1) - ipow(lo - shift, d + 1)) / ((d + 1.0) * (c.b - c.a));
        break;
      }
      case Kind::Pareto: {
        const double lo = std::max(c.b, shift);
        if (cut == kInf && c.a <= d) return kInf;
        if (lo < cut)
          for (int k = 0; k <= d; ++k)
            m += binom(d, k) * ipow(-shift, d - k) * comp_interval_moment(c, k, lo, cut);
        break;
      }
    }
    total += weights_[i] * m;
  }
  return total;
}

double RadiusLaw::min_power_moment(int d, double cut) const {
  if (cut == kInf) return tail_moment(d, 0.0);
  return interval_moment(d, 0.0, cut) + ipow(cut, d) * tail_prob(cut);
}

double RadiusLaw::support_upper() const {
  double s = 0.0;
  for (const auto& c : comps_) {
    switch (c.kind) {
      case Kind::Constant: s = std::max(s, c.a); break;
      case Kind::Uniform: s = std::max(s, c.b); break;
      case Kind::Pareto: return kInf;
    }
  }
  return s;
}

}  // namespace percolab
