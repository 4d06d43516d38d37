#include "holocirc/notation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>

#include "holocirc/error.hpp"

namespace holocirc {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::int64_t to_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (b == e || ec != std::errc() || p != e)
    throw ParseError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

HolElem2 parse_element(std::string_view text, int n) {
  std::string s = strip(text);
  if (s.empty()) throw ParseError("empty element");
  HolElem2 h = HolElem2::identity(n);
  if (s == "1" || s == "e") return h;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '*') {
      if (i == 0 || i + 1 == s.size() || s[i + 1] == '*')
        throw ParseError("misplaced '*' in '" + s + "'");
      ++i;
      continue;
    }
    HolElem2 base;
    switch (c) {
      case 'a': base = HolElem2::a(n); break;
      case 'x': base = HolElem2::x(n); break;
      case 'y': base = HolElem2::y(n); break;
      default: throw ParseError(std::string("unexpected '") + c + "' in '" + s + "'");
    }
    ++i;
    std::int64_t e = 1;
    if (i < s.size() && s[i] == '^') {
      std::size_t j = ++i;
      if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      e = to_int(std::string_view(s).substr(i, j - i), "exponent");
      i = j;
    }
    h = compose(h, power(base, e));
  }
  return h;
}

std::string format_element(const HolElem2& h) {
  if (h.is_identity()) return "1";
  std::string out;
  auto part = [&](char sym, u64 e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += sym;
    if (e != 1) out += '^' + std::to_string(e);
  };
  part('a', h.alpha);
  part('x', h.beta);
  part('y', h.gamma);
  return out;
}

std::string format_affine(const AffineMap& h) {
  return "(" + std::to_string(h.t) + "," + std::to_string(h.m) + ")";
}

std::ostream& operator<<(std::ostream& os, const HolElem2& h) {
  return os << format_element(h) << " (n=" << h.n << ")";
}

std::ostream& operator<<(std::ostream& os, const AffineMap& h) {
  return os << format_affine(h) << " mod " << h.n;
}

std::vector<u64> parse_residue_set(std::string_view text, u64 n) {
  std::string s = strip(text);
  std::vector<u64> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    std::string_view tok = std::string_view(s).substr(start, comma - start);
    if (tok.empty()) throw ParseError("empty entry in '" + s + "'");
    std::int64_t lo, hi;
    if (auto dots = tok.find(".."); dots != std::string_view::npos) {
      lo = to_int(tok.substr(0, dots), "residue");
      hi = to_int(tok.substr(dots + 2), "residue");
    } else {
      lo = hi = to_int(tok, "residue");
    }
    if (lo < 0 || hi < lo || static_cast<u64>(hi) >= n)
      throw ParseError("residue out of range mod " + std::to_string(n) + ": '" +
                       std::string(tok) + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<u64>(v));
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_residue_set(const std::vector<u64>& s) {
  std::string out;
  for (u64 v : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

IntRange parse_range(std::string_view text) {
  std::string s = strip(text);
  IntRange r;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    r.lo = to_int(std::string_view(s).substr(0, dots), "range");
    r.hi = to_int(std::string_view(s).substr(dots + 2), "range");
  } else {
    r.lo = r.hi = to_int(s, "range");
  }
  if (r.hi < r.lo) throw ParseError("empty range '" + s + "'");
  return r;
}

Shard parse_shard(std::string_view text) {
  std::string s = strip(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) throw ParseError("shard must be i/k: '" + s + "'");
  auto i = to_int(std::string_view(s).substr(0, slash), "shard");
  auto k = to_int(std::string_view(s).substr(slash + 1), "shard");
  if (k < 1 || i < 0 || i >= k) throw ParseError("shard index out of range: '" + s + "'");
  return Shard{static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)};
}

std::pair<std::uint64_t, std::uint64_t> Shard::slice(std::uint64_t total) const {
  auto at = [&](std::uint64_t i) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(total) * i) / count);
  };
  return {at(index), at(index + 1)};
}

}  // namespace holocirc
