#pragma once

// Point literals for tests: P({1,2}), bits("0110"), rank("cab").
#include <ostream>
#include <string>
#include <vector>

#include "delib/rules.hpp"

namespace delib {
// Readable gtest failure output.
inline void PrintTo(const Point& p, std::ostream* os) { *os << to_string(p); }
}  // namespace delib

namespace delib::test {

inline Point P(std::vector<double> c) { return Point::real(std::move(c)); }

inline Point bits(const std::string& s) {
  std::vector<int> b;
  for (char c : s) b.push_back(c - '0');
  return Point::bits(std::move(b));
}

inline Point rank(const std::string& s) {
  std::vector<int> r;
  for (char c : s) r.push_back(c - 'a');
  return Point::ranking(std::move(r));
}

inline std::string letters(const Point& p) {
  std::string s;
  for (int c : p.entries()) s += static_cast<char>('a' + c);
  return s;
}

inline std::string bitstr(const Point& p) {
  std::string s;
  for (int b : p.entries()) s += static_cast<char>('0' + b);
  return s;
}

inline Profile rankings(int m, std::vector<std::string> rs, Distance d = Distance::Swap) {
  Profile p{SpaceSpec::ranking(m, d), {}};
  for (const auto& r : rs) p.points.push_back(rank(r));
  return p;
}

}  // namespace delib::test
