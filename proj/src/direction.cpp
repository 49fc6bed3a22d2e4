#include "ksep/direction.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ksep {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::canonical: return "canonical";
    case Provenance::perturbed: return "perturbed";
    case Provenance::grid: return "grid";
    case Provenance::learned: return "learned";
    case Provenance::explicit_input: return "explicit";
  }
  return "?";
}

std::string Direction::str() const {
  std::ostringstream out;
  for (int i = 0; i < dim(); ++i) {
    if (i) out << ",";
    out << weight(i).str();
  }
  return out.str();
}

namespace {

// One weight token: integer, fraction "p/q", or decimal "1.01" / "-0.5".
long long whole_ll(const std::string& s) {
  std::size_t pos = 0;
  long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

Rat parse_weight(const std::string& tok) {
  auto bad = [&] { throw std::invalid_argument("bad weight token '" + tok + "'"); };
  if (tok.empty()) bad();
  auto slash = tok.find('/');
  try {
    if (slash != std::string::npos) {
      return Rat(whole_ll(tok.substr(0, slash)), whole_ll(tok.substr(slash + 1)));
    }
    auto dot = tok.find('.');
    if (dot != std::string::npos) {
      std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
      std::size_t frac_len = tok.size() - dot - 1;
      if (frac_len == 0 || frac_len > 9) bad();
      long long den = 1;
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      if (digits == "-" || digits.empty()) bad();
      return Rat(whole_ll(digits), den);
    }
    return Rat(whole_ll(tok));
  } catch (const std::invalid_argument&) {
    bad();
  } catch (const std::out_of_range&) {
    bad();
  }
  return Rat();  // unreachable
}

}  // namespace

Direction Direction::parse(const std::string& text) {
  std::vector<Rat> ws;
  std::string tok;  // split by hand: getline would swallow a trailing comma
  for (char c : text) {
    if (c == ',') {
      ws.push_back(parse_weight(tok));
      tok.clear();
    } else {
      tok += c;
    }
  }
  ws.push_back(parse_weight(tok));
  if (ws.empty()) throw std::invalid_argument("empty direction");

  long long den = 1;
  for (const auto& w : ws) den = std::lcm(den, w.den);
  Direction d;
  d.den = den;
  for (const auto& w : ws) d.num.push_back(w.num * (den / w.den));
  if (d.is_zero()) throw std::invalid_argument("zero direction");
  return d;
}

}  // namespace ksep
