#include "rlab/lattice.hpp"

#include <charconv>
#include <sstream>

namespace rlab {

std::string Point::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

std::vector<Point> neighbors(const Point& p) {
  std::vector<Point> out;
  out.reserve(2 * static_cast<std::size_t>(p.dim()));
  for (int i = 0; i < p.dim(); ++i) {
    Point lo = p;
    lo[i] -= 1;
    out.push_back(lo);
    Point hi = p;
    hi[i] += 1;
    out.push_back(hi);
  }
  return out;
}

PointSet vertex_boundary(const PointSet& xs) {
  PointSet out;
  for (const Point& x : xs) {
    for (const Point& y : neighbors(x)) {
      if (!xs.count(y)) out.insert(y);
    }
  }
  return out;
}

PointSet vertex_boundary(const std::vector<Point>& xs) {
  return vertex_boundary(PointSet(xs.begin(), xs.end()));
}

Exponent::Exponent(double p) : value_(p), infinite_(std::isinf(p) && p > 0) {
  if (std::isnan(p) || p < 1.0) throw std::domain_error("exponent p must satisfy p >= 1");
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") return infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || std::isinf(v))
    throw std::invalid_argument("invalid exponent '" + std::string(text) + "' (use a decimal >= 1 or inf)");
  return Exponent(v);
}

std::optional<int> Exponent::as_integer() const {
  if (infinite_) return std::nullopt;
  if (value_ == std::floor(value_) && value_ <= 1e6) return static_cast<int>(value_);
  return std::nullopt;
}

std::string Exponent::str() const {
  if (infinite_) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
  (void)ec;
  return std::string(buf, ptr);
}

double lp_combine(const std::vector<double>& terms, const Exponent& p) {
  double mx = 0.0;
  for (double t : terms) mx = std::max(mx, std::abs(t));
  if (p.is_infinite() || mx == 0.0) return mx;
  const double q = p.value();
  if (q == 1.0) {
    double s = 0.0;
    for (double t : terms) s += std::abs(t);
    return s;
  }
  double s = 0.0;
  for (double t : terms) s += std::pow(std::abs(t) / mx, q);
  return mx * std::pow(s, 1.0 / q);
}

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    return Rational(to_int(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  BigInt d = to_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(to_int(num), d);
}

std::string format_rational(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace rlab
