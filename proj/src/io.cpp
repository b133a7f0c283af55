#include "schurlab/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "schurlab/errors.hpp"

namespace schurlab {
namespace {

std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(const std::string& token, std::size_t line, const char* what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + token + "'");
  }
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return in;
}

}  // namespace

IntSet parse_set(std::istream& in) {
  IntSet out;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const std::string s = strip(raw);
    if (s.empty()) continue;
    const std::int64_t v = parse_int(s, line, "element");
    if (!out.empty() && v <= out.back()) throw ParseError(line, "elements must be strictly increasing");
    out.push_back(v);
  }
  return out;
}

IntSet read_set_file(const std::string& path) {
  auto in = open(path);
  return parse_set(in);
}

void write_set(std::ostream& out, const IntSet& set) {
  for (const auto x : set) out << x << '\n';
}

Colouring parse_colouring(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  std::string header;
  while (header.empty() && std::getline(in, raw)) {
    ++line;
    header = strip(raw);
  }
  if (header.empty()) throw ParseError(line, "missing header 'k=<int> N0=<int>'");

  Colouring c;
  {
    std::istringstream hs(header);
    std::string kt, nt, extra;
    hs >> kt >> nt;
    if (kt.rfind("k=", 0) != 0 || nt.rfind("N0=", 0) != 0 || (hs >> extra)) {
      throw ParseError(line, "header must read 'k=<int> N0=<int>'");
    }
    const std::int64_t k = parse_int(kt.substr(2), line, "k");
    c.N0 = parse_int(nt.substr(3), line, "N0");
    if (k < 1 || k > 1'000'000) throw ParseError(line, "k must be a positive integer");
    if (c.N0 < 0) throw ParseError(line, "N0 must be non-negative");
    c.k = static_cast<int>(k);
  }
  const PrimeTable table(static_cast<std::uint64_t>(std::max<std::int64_t>(c.N0, 2)));
  const auto all = table.primes();
  std::size_t next = 0;  // index of the prime expected next

  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip(raw);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string pt, ct, extra;
    if (!(ls >> pt >> ct) || (ls >> extra)) throw ParseError(line, "expected 'p c'");
    const std::int64_t p = parse_int(pt, line, "prime");
    const std::int64_t colour = parse_int(ct, line, "colour");
    if (p < 2 || p > c.N0 || !table.is_prime(static_cast<std::uint64_t>(p))) {
      throw ParseError(line, std::to_string(p) + " is not a prime <= N0");
    }
    if (!c.primes.empty() && p == c.primes.back()) throw ParseError(line, "duplicate prime " + std::to_string(p));
    if (!c.primes.empty() && p < c.primes.back()) throw ParseError(line, "primes must be in increasing order");
    if (static_cast<std::int64_t>(all[next]) != p) {
      throw ParseError(line, "missing prime " + std::to_string(all[next]));
    }
    if (colour < 1 || colour > c.k) {
      throw ParseError(line, "colour " + std::to_string(colour) + " outside [1, " + std::to_string(c.k) + "]");
    }
    c.primes.push_back(p);
    c.colours.push_back(static_cast<int>(colour));
    ++next;
  }
  if (next < all.size() && static_cast<std::int64_t>(all[next]) <= c.N0) {
    throw ParseError(line, "missing prime " + std::to_string(all[next]));
  }
  return c;
}

Colouring read_colouring_file(const std::string& path) {
  auto in = open(path);
  return parse_colouring(in);
}

void write_colouring(std::ostream& out, const Colouring& c) {
  out << "k=" << c.k << " N0=" << c.N0 << '\n';
  for (std::size_t i = 0; i < c.primes.size(); ++i) out << c.primes[i] << ' ' << c.colours[i] << '\n';
}

}  // namespace schurlab
