#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conezar {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Raised for semantic failures: invalid geometry, non-big classes,
/// optimizer breakdown.  The CLI maps it to exit code 3.
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for malformed configuration or input files.  CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline Rat rat_of(long long num, long long den = 1) {
  if (den == 0) throw MathError("rational with zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

/// Parses "p/q", plain integers, and decimal literals ("-1.25") exactly.
inline Rat parse_rat(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ConfigError("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty())
      throw ConfigError("malformed rational '" + text + "'");
    try {
      Rat r{BigInt(num), BigInt(den)};
      return r;
    } catch (const std::exception&) {
      throw ConfigError("malformed rational '" + text + "'");
    }
  }

  bool neg = false;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string int_part, frac_part;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_dot) throw ConfigError("malformed number '" + text + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      (seen_dot ? frac_part : int_part).push_back(c);
    } else {
      throw ConfigError("malformed number '" + text + "'");
    }
  }
  if (!seen_digit) throw ConfigError("malformed number '" + text + "'");
  BigInt num = int_part.empty() ? BigInt(0) : BigInt(int_part);
  BigInt den = 1;
  for (char c : frac_part) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rat r(num, den);
  if (neg) r = -r;
  return r;
}

inline std::string format_rat(const Rat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Best rational approximation with denominator at most `max_den`,
/// via continued fractions.  Exact floats (small dyadics) come back exact.
inline Rat rat_from_double(double x, std::int64_t max_den = 1000000) {
  if (!std::isfinite(x)) throw MathError("cannot rationalize non-finite value");
  if (max_den < 1) throw MathError("rationalization bound must be positive");
  bool neg = x < 0;
  double v = std::fabs(x);

  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 9.2e18) break;
    std::int64_t a = static_cast<std::int64_t>(fl);
    if (q0 > 0 && a > (std::numeric_limits<std::int64_t>::max() - q0) / std::max<std::int64_t>(q1, 1))
      break;
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Take the best semiconvergent that still fits the bound.
      std::int64_t k = (max_den - q0) / std::max<std::int64_t>(q1, 1);
      std::int64_t ps = k * p1 + p0, qs = k * q1 + q0;
      if (qs >= 1) {
        double e_conv = std::fabs(v - double(p1) / double(q1));
        double e_semi = std::fabs(v - double(ps) / double(qs));
        if (q1 >= 1 && e_conv <= e_semi) {
          ps = p1;
          qs = q1;
        }
        p1 = ps;
        q1 = qs;
      }
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) { p1 = p0; q1 = q0; }
  if (q1 == 0) throw MathError("rationalization failed");
  Rat r{BigInt(p1), BigInt(q1)};
  if (neg) r = -r;
  return r;
}

using RatVec = std::vector<Rat>;

inline RatVec rat_vec(std::initializer_list<long long> xs) {
  RatVec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace conezar
