#include "quasitrace/io/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace quasitrace::io {

namespace {

std::string side_name(words::Side side) { return words::to_string(side); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_real(spectrum::Real x, int digits) {
  if (x == 0) return "0";
  std::string out;
  if (x < 0) {
    out.push_back('-');
    x = -x;
  }
  int e10 = static_cast<int>(std::floor(std::log10(static_cast<double>(x))));
  auto pow10 = [](int e) {
    spectrum::Real p = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= 10;
    return e < 0 ? 1 / p : p;
  };
  spectrum::Real y = x / pow10(e10);
  if (y >= 10) {
    y /= 10;
    ++e10;
  } else if (y < 1) {
    y *= 10;
    --e10;
  }
  for (int i = 0; i < digits; ++i) {
    int d = static_cast<int>(y);
    d = d < 0 ? 0 : (d > 9 ? 9 : d);
    out.push_back(static_cast<char>('0' + d));
    if (i == 0) out.push_back('.');
    y = (y - d) * 10;
  }
  char exp[16];
  std::snprintf(exp, sizeof exp, "e%+03d", e10);
  return out + exp;
}

std::string format_phase(words::PhasePoint theta) { return words::to_decimal_string(theta, 36); }

std::string traces_csv(std::span<const transfer::TraceSample> rows) {
  std::string out = "k,E,lambda,theta,x,dx\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + format_double(r.energy) + ',' + format_double(r.lambda) + ',' +
           format_phase(r.theta) + ',' + r.x.to_string() + ',' + r.dx.to_string() + '\n';
  }
  return out;
}

std::string norms_csv(std::span<const NormRecord> rows) {
  std::string out = "L,E,lambda,theta,norm_sq\n";
  for (const auto& r : rows) {
    out += format_double(r.L) + ',' + format_double(r.energy) + ',' + format_double(r.lambda) + ',' +
           format_phase(r.theta) + ',' + r.norm_sq.to_string() + '\n';
  }
  return out;
}

std::string margins_csv(std::span<const MarginRecord> rows) {
  std::string out = "k,E,lambda,theta,side,norm_sq,lhs,abs_dx,margin\n";
  for (const auto& r : rows) {
    const auto& m = r.margin;
    out += std::to_string(m.k) + ',' + format_double(r.energy) + ',' + format_double(r.lambda) + ',' +
           format_phase(r.theta) + ',' + side_name(m.side) + ',' + m.norm_sq.to_string() + ',' +
           m.lhs.to_string() + ',' + m.abs_dx.to_string() + ',' + m.margin.to_string() + '\n';
  }
  return out;
}

std::string bands_csv(std::span<const std::vector<spectrum::Band>> levels) {
  std::string out = "k,lambda,band_index,E_lo,E_hi\n";
  for (const auto& level : levels) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto& b = level[i];
      out += std::to_string(b.k) + ',' + format_double(b.lambda) + ',' + std::to_string(i) + ',' +
             format_real(b.lo) + ',' + format_real(b.hi) + '\n';
    }
  }
  return out;
}

std::string growth_csv(std::span<const spectrum::GrowthFit> fits) {
  std::string out = "lambda,k,min_abs_dx\n";
  for (const auto& fit : fits) {
    for (const auto& level : fit.levels) {
      out += format_double(fit.lambda) + ',' + std::to_string(level.k) + ',' +
             format_double(level.min_abs_dx) + '\n';
    }
  }
  return out;
}

std::string dynamics_csv(std::span<const dynamics::AbelRecord> rows) {
  std::string out = "lambda,theta,T,L,mass,edge_mass,valid\n";
  for (const auto& r : rows) {
    out += format_double(r.lambda) + ',' + format_phase(r.theta) + ',' + format_double(r.T) + ',' +
           format_double(r.L) + ',' + format_double(r.mass) + ',' + format_double(r.edge_mass) + ',' +
           (r.valid ? "1" : "0") + '\n';
  }
  return out;
}

std::string words_csv(std::span<const WordRow> rows) {
  std::string out = "k,F_k,height,b_first,b_last,identity_ok,census,s_k\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.length) + ',' + std::to_string(r.height) + ',' +
           r.special_first + ',' + r.special_last + ',' + (r.identity_ok ? "1" : "0") + ',' +
           (r.census < 0 ? std::string("na") : std::string(r.census ? "1" : "0")) + ',' + r.word + '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
  const auto path = dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace quasitrace::io
