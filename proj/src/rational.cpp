#include "reeb/rational.hpp"

#include <cctype>
#include <sstream>

namespace reeb {

std::optional<Rat> parse_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string t = s;
  bool neg = false;
  size_t i = 0;
  if (t[i] == '+' || t[i] == '-') {
    neg = t[i] == '-';
    ++i;
  }
  if (i >= t.size()) return std::nullopt;

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string num = t.substr(i, slash - i), den = t.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    for (char c : den)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    Int n(num), d(den);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    return neg ? Rat(-r) : r;
  }

  auto dot = t.find('.');
  std::string ipart, fpart;
  if (dot == std::string::npos) {
    ipart = t.substr(i);
  } else {
    ipart = t.substr(i, dot - i);
    fpart = t.substr(dot + 1);
  }
  if (ipart.empty() && fpart.empty()) return std::nullopt;
  for (char c : ipart)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  for (char c : fpart)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;

  Int n = ipart.empty() ? Int(0) : Int(ipart);
  Rat r(n);
  if (!fpart.empty()) {
    Int f(fpart);
    Int d(1);
    for (size_t k = 0; k < fpart.size(); ++k) d *= 10;
    r += Rat(f, d);
  }
  return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  if (denominator(r) == 1) {
    os << numerator(r);
  } else {
    os << numerator(r) << "/" << denominator(r);
  }
  return os.str();
}

std::string rat_to_decimal(const Rat& r) {
  std::ostringstream os;
  os.precision(12);
  os << rat_to_double(r);
  return os.str();
}

double rat_to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace reeb
