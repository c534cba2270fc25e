#pragma once

// Text formats: SampledFunction CSV (x,re,im with exact dyadic x), spectrum
// CSV (omega,re,im), correlation CSV (n,re,im), filter JSON and report JSON.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrakit/error.hpp"
#include "mrakit/mra.hpp"
#include "mrakit/sequence.hpp"
#include "mrakit/signal.hpp"
#include "mrakit/spectra.hpp"

namespace mrakit::io {

using nlohmann::json;

/// Shortest round-trip decimal for a double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Exact decimal expansion of numerator * 2^-exponent.
inline std::string dyadic_decimal(std::int64_t numerator, int exponent) {
  const bool negative = numerator < 0;
  std::string digits = std::to_string(numerator);
  if (negative) digits.erase(0, 1);
  if (exponent <= 0) {
    // Integer: multiply by 2^-exponent in decimal.
    for (int i = 0; i < -exponent; ++i) {
      int carry = 0;
      for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        const int d = (*it - '0') * 2 + carry;
        *it = static_cast<char>('0' + d % 10);
        carry = d / 10;
      }
      if (carry) digits.insert(digits.begin(), static_cast<char>('0' + carry));
    }
  } else {
    // numerator * 5^exponent / 10^exponent.
    for (int i = 0; i < exponent; ++i) {
      int carry = 0;
      for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        const int d = (*it - '0') * 5 + carry;
        *it = static_cast<char>('0' + d % 10);
        carry = d / 10;
      }
      while (carry) {
        digits.insert(digits.begin(), static_cast<char>('0' + carry % 10));
        carry /= 10;
      }
    }
    if (static_cast<int>(digits.size()) <= exponent) digits.insert(0, static_cast<std::size_t>(exponent + 1) - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(exponent), ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
  }
  if (digits == "0") return digits;
  return negative ? "-" + digits : digits;
}

// --- SampledFunction CSV ----------------------------------------------------

inline void write_function_csv(std::ostream& os, const SampledFunction& f) {
  os << "x,re,im\n";
  const auto v = f.values();
  for (std::int64_t k = 0; k < f.size(); ++k) {
    const Complex c = v[static_cast<std::size_t>(k)];
    os << dyadic_decimal(f.grid().first + k, f.resolution()) << ',' << format_double(c.real()) << ','
       << format_double(c.imag()) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) fields.push_back(cell);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_number(const std::string& s, const std::string& context) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\r' || *end == '\t')) ++end;
  if (end == begin || *end != '\0') throw Error(ErrorCode::ParseError, "bad number '" + s + "' in " + context);
  if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "non-finite value in " + context);
  return v;
}

struct Row3 {
  double a;
  double re;
  double im;
};

inline std::vector<Row3> read_three_columns(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw Error(ErrorCode::ParseError, "expected header '" + header + "', got '" + line + "'");
  std::vector<Row3> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = "line " + std::to_string(lineno);
    if (f.size() != 3) throw Error(ErrorCode::ParseError, "expected 3 fields on " + where);
    rows.push_back({parse_number(f[0], where), parse_number(f[1], where), parse_number(f[2], where)});
  }
  return rows;
}

}  // namespace detail

/// Reads a function CSV. The resolution follows from the sample spacing; a
/// single-row file needs `resolution_hint`.
inline SampledFunction read_function_csv(std::istream& is, std::optional<int> resolution_hint = std::nullopt) {
  const auto rows = detail::read_three_columns(is, "x,re,im");
  if (rows.empty()) return SampledFunction::zero(resolution_hint.value_or(0));
  int J = 0;
  if (rows.size() >= 2) {
    const double d = rows[1].a - rows[0].a;
    int e = 0;
    const double mant = std::frexp(d, &e);
    if (!(d > 0.0) || mant != 0.5) throw Error(ErrorCode::ParseError, "sample spacing is not a power of two");
    J = 1 - e;
    if (resolution_hint && *resolution_hint != J) throw Error(ErrorCode::ParseError, "spacing disagrees with --grid-J");
  } else if (resolution_hint) {
    J = *resolution_hint;
  } else {
    throw Error(ErrorCode::ParseError, "a single sample does not determine the resolution; pass it explicitly");
  }
  const double first_d = std::ldexp(rows[0].a, J);
  if (first_d != std::floor(first_d)) throw Error(ErrorCode::ParseError, "first x is not on the grid");
  const auto first = static_cast<std::int64_t>(first_d);
  std::vector<Complex> values;
  values.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (std::ldexp(rows[k].a, J) != static_cast<double>(first + static_cast<std::int64_t>(k))) {
      throw Error(ErrorCode::ParseError, "x values are not consecutive grid points (row " + std::to_string(k + 1) + ")");
    }
    values.emplace_back(rows[k].re, rows[k].im);
  }
  return SampledFunction(DyadicGrid{J, first, static_cast<std::int64_t>(rows.size())}, std::move(values));
}

// --- spectra and correlations ---------------------------------------------

inline void write_spectrum_csv(std::ostream& os, const SpectrumSamples& s) {
  os << "omega,re,im\n";
  for (std::int64_t m = 0; m < s.points(); ++m) {
    os << format_double(s.omega(m)) << ',' << format_double(s[m].real()) << ',' << format_double(s[m].imag()) << '\n';
  }
}

inline void write_fourier_csv(std::ostream& os, const FourierSamples& F) {
  os << "omega,re,im\n";
  for (std::size_t m = 0; m < F.values.size(); ++m) {
    os << format_double(F.omegas[m]) << ',' << format_double(F.values[m].real()) << ','
       << format_double(F.values[m].imag()) << '\n';
  }
}

inline FourierSamples read_fourier_csv(std::istream& is) {
  FourierSamples F;
  for (const auto& r : detail::read_three_columns(is, "omega,re,im")) {
    F.omegas.push_back(r.a);
    F.values.emplace_back(r.re, r.im);
  }
  return F;
}

inline void write_sequence_csv(std::ostream& os, const FilterSequence& x) {
  os << "n,re,im\n";
  for (std::int64_t n = x.offset(); n <= x.last(); ++n) {
    os << n << ',' << format_double(x.at(n).real()) << ',' << format_double(x.at(n).imag()) << '\n';
  }
}

inline FilterSequence read_sequence_csv(std::istream& is) {
  const auto rows = detail::read_three_columns(is, "n,re,im");
  if (rows.empty()) return {};
  const auto first = static_cast<std::int64_t>(rows[0].a);
  std::vector<Complex> v;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].a != static_cast<double>(first + static_cast<std::int64_t>(k))) throw Error(ErrorCode::ParseError, "indices are not consecutive");
    v.emplace_back(rows[k].re, rows[k].im);
  }
  return FilterSequence(first, std::move(v));
}

// --- filter JSON ----------------------------------------------------------

struct NamedFilter {
  std::string name;
  FilterSequence h;
};

inline json filter_to_json(const std::string& name, const FilterSequence& h) {
  json coeffs = json::array();
  for (const Complex& c : h.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return json{{"name", name}, {"offset", h.offset()}, {"coeffs", coeffs}};
}

inline NamedFilter filter_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "filter must be a JSON object");
    NamedFilter out;
    out.name = j.value("name", std::string{});
    const json& off = j.at("offset");
    if (!off.is_number_integer()) throw Error(ErrorCode::ParseError, "offset must be an integer");
    const json& cs = j.at("coeffs");
    if (!cs.is_array()) throw Error(ErrorCode::ParseError, "coeffs must be an array");
    std::vector<Complex> v;
    for (const json& c : cs) {
      if (c.is_number()) {
        v.emplace_back(c.get<double>(), 0.0);
      } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
        v.emplace_back(c[0].get<double>(), c[1].get<double>());
      } else {
        throw Error(ErrorCode::ParseError, "each coefficient must be [re, im]");
      }
      if (!std::isfinite(v.back().real()) || !std::isfinite(v.back().imag())) {
        throw Error(ErrorCode::ParseError, "non-finite coefficient");
      }
    }
    out.h = FilterSequence(off.get<std::int64_t>(), std::move(v));
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline NamedFilter parse_filter(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return filter_from_json(j);
}

// --- reports --------------------------------------------------------------

/// Residuals are written as 17-significant-digit decimal strings.
inline std::string decimal17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

inline json report_to_json(const CheckReport& r) {
  return json{
      {"admissibility", decimal17(r.admissibility)},
      {"dilation", decimal17(r.dilation)},
      {"filter_quadrature_time", decimal17(r.filter_quadrature_time)},
      {"filter_quadrature_freq", decimal17(r.filter_quadrature_freq)},
      {"quadrature_time", decimal17(r.quadrature_time)},
      {"quadrature_freq", decimal17(r.quadrature_freq)},
      {"pou_function", decimal17(r.pou_function)},
      {"pou_constant", {decimal17(r.pou_constant.real()), decimal17(r.pou_constant.imag())}},
      {"pou_filter",
       {{"alternating", decimal17(r.pou_filter.alternating)},
        {"even_minus", decimal17(r.pou_filter.even_minus)},
        {"odd_minus", decimal17(r.pou_filter.odd_minus)}}},
      {"riesz", {{"A", decimal17(r.riesz.A)}, {"B", decimal17(r.riesz.B)}}},
      {"orthonormality", decimal17(r.orthonormality)},
      {"phi_tilde_zero", decimal17(r.phi_tilde_zero)},
      {"continuity", decimal17(r.continuity)},
      {"converged", r.converged},
      {"iterations_used", r.iterations_used},
  };
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace mrakit::io
