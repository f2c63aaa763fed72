// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rdmc/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rdmc {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_double17(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

namespace {

double parse_double(const std::string& token) {
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw FormatError("bad number '" + token + "'");
  }
  return v;
}

std::string next_token(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) throw FormatError(std::string("unexpected end of input reading ") + what);
  return tok;
}

long long next_int(std::istream& is, const char* what) {
  const std::string tok = next_token(is, what);
  long long v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw FormatError(std::string("bad integer for ") + what + ": '" + tok + "'");
  }
  return v;
}

void expect(std::istream& is, const std::string& word) {
  const std::string tok = next_token(is, word.c_str());
  if (tok != word) throw FormatError("expected '" + word + "', found '" + tok + "'");
}

void expect_header(std::istream& is, const std::string& magic, int version) {
  expect(is, magic);
  const long long v = next_int(is, "format version");
  if (v != version) {
    throw FormatError(magic + " version " + std::to_string(v) + " is not supported");
  }
}

BasisTag read_basis(std::istream& is) {
  expect(is, "basis");
  try {
    return basis_tag_from_string(next_token(is, "basis tag"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  return is;
}

}  // namespace

void write_two_rdm(std::ostream& os, const TwoRDM& gamma) {
  const int dim = gamma.space.size();
  os << "rdmc-two-rdm " << kTwoRdmFormatVersion << '\n'
     << "basis " << to_string(gamma.basis) << '\n'
     << "orbitals " << gamma.space.n_orbitals() << '\n'
     << "particles " << gamma.particles << '\n'
     << "pair-order ordered-distinct-row-major\n"
     << "dim " << dim << '\n';
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const auto v = gamma.elements(r, c);
      if (c > 0) os << ' ';
      os << format_double(v.real()) << ' ' << format_double(v.imag());
    }
    os << '\n';
  }
}

TwoRDM read_two_rdm(std::istream& is) {
  expect_header(is, "rdmc-two-rdm", kTwoRdmFormatVersion);
  const BasisTag basis = read_basis(is);
  expect(is, "orbitals");
  const long long orbitals = next_int(is, "orbitals");
  if (orbitals < 2 || orbitals > 2 * kMaxSites) throw FormatError("orbital count out of range");
  expect(is, "particles");
  const long long particles = next_int(is, "particles");
  expect(is, "pair-order");
  expect(is, "ordered-distinct-row-major");
  expect(is, "dim");
  const long long dim = next_int(is, "dim");
  const PairSpace space(static_cast<int>(orbitals));
  if (dim != space.size()) throw FormatError("dim does not match orbital count");
  TwoRDM out{space, basis, static_cast<int>(particles),
             Eigen::MatrixXcd(space.size(), space.size())};
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = parse_double(next_token(is, "matrix element"));
      const double im = parse_double(next_token(is, "matrix element"));
      out.elements(r, c) = {re, im};
    }
  }
  return out;
}

void write_subset(std::ostream& os, const CriticalSubset& subset) {
  os << "rdmc-critical-subset " << kSubsetFormatVersion << '\n'
     << "basis " << to_string(subset.basis) << '\n'
     << "dim " << subset.dim << '\n'
     << "count " << subset.size() << '\n';
  for (const auto& p : subset.members) os << p.row << ' ' << p.col << '\n';
}

CriticalSubset read_subset(std::istream& is) {
  expect_header(is, "rdmc-critical-subset", kSubsetFormatVersion);
  CriticalSubset out;
  out.basis = read_basis(is);
  expect(is, "dim");
  out.dim = static_cast<int>(next_int(is, "dim"));
  expect(is, "count");
  const long long count = next_int(is, "count");
  if (count < 0 || count > static_cast<long long>(out.dim) * out.dim) {
    throw FormatError("subset count out of range");
  }
  out.members.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const int r = static_cast<int>(next_int(is, "row"));
    const int c = static_cast<int>(next_int(is, "col"));
    if (r < 0 || c < 0 || r >= out.dim || c >= out.dim) {
      throw FormatError("subset position out of range");
    }
    out.members.push_back({r, c});
  }
  if (!std::is_sorted(out.members.begin(), out.members.end()) ||
      std::adjacent_find(out.members.begin(), out.members.end()) != out.members.end()) {
    throw FormatError("subset positions must be sorted and unique");
  }
  return out;
}

void write_state(std::ostream& os, const Eigen::VectorXcd& psi) {
  os << "rdmc-state 1\n" << "dim " << psi.size() << '\n';
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    os << format_double(psi(i).real()) << ' ' << format_double(psi(i).imag()) << '\n';
  }
}

Eigen::VectorXcd read_state(std::istream& is) {
  expect_header(is, "rdmc-state", 1);
  expect(is, "dim");
  const long long dim = next_int(is, "dim");
  if (dim < 1) throw FormatError("state dimension must be positive");
  Eigen::VectorXcd psi(dim);
  for (long long i = 0; i < dim; ++i) {
    const double re = parse_double(next_token(is, "amplitude"));
    const double im = parse_double(next_token(is, "amplitude"));
    psi(i) = {re, im};
  }
  return psi;
}

void write_trace_csv(std::ostream& os, const AnnealTrace& trace) {
  os << "# rdmc-trace v" << kTraceFormatVersion << '\n'
     << "k,D_partial,D_full,energy_dev,infidelity,T,theta_max,accepted,generator_id,clamped\n";
  for (const auto& r : trace.rows) {
    os << r.k << ',' << format_double17(r.d_partial) << ',' << format_double17(r.d_full)
       << ',' << format_double17(r.energy_dev) << ',' << format_double17(r.infidelity)
       << ',' << format_double17(r.temperature) << ',' << format_double17(r.max_angle)
       << ',' << (r.accepted ? 1 : 0) << ',' << r.generator << ','
       << (r.clamped ? 1 : 0) << '\n';
  }
}

void save_two_rdm(const std::filesystem::path& path, const TwoRDM& gamma) {
  auto os = open_out(path);
  write_two_rdm(os, gamma);
}

TwoRDM load_two_rdm(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_two_rdm(is);
}

void save_subset(const std::filesystem::path& path, const CriticalSubset& subset) {
  auto os = open_out(path);
  write_subset(os, subset);
}

CriticalSubset load_subset(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_subset(is);
}

Eigen::VectorXcd load_state(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_state(is);
}

void save_state(const std::filesystem::path& path, const Eigen::VectorXcd& psi) {
  auto os = open_out(path);
  write_state(os, psi);
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  auto os = open_out(path);
  os << text;
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace rdmc
