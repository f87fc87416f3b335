#include "zeroset/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "zeroset/errors.hpp"
#include "zeroset/simulate.hpp"

namespace zeroset {

namespace {

constexpr char kMagic[8] = {'Z', 'S', 'F', 'I', 'E', 'L', 'D', '1'};

template <typename T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
    throw DataError("truncated field cache");
  return value;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::string field_cache_name(std::uint64_t seed) { return "field_" + std::to_string(seed) + ".bin"; }

void write_field_cache(const std::filesystem::path& path, const WeightedField<double>& field,
                       const FieldCacheInfo& info) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  const GridSpec& g = field.grid();
  const bool single = info.precision == Precision::Single;
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, single ? 8 : 16);
  put<double>(out, g.L());
  put<double>(out, g.delta());
  put<double>(out, g.T());
  put<std::int32_t>(out, g.margin());
  put<double>(out, info.sigma);
  put<std::uint64_t>(out, info.seed);
  const std::string descriptor = format_signal(info.signal);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(descriptor.size()));
  out.write(descriptor.data(), static_cast<std::streamsize>(descriptor.size()));
  const auto n = static_cast<std::uint32_t>(g.size());
  put<std::uint32_t>(out, n);
  put<std::uint32_t>(out, n);
  const auto& v = field.values();
  if (single) {
    std::vector<std::complex<float>> row(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      for (std::uint32_t l = 0; l < n; ++l) row[l] = std::complex<float>(v(k, l));
      out.write(reinterpret_cast<const char*>(row.data()), n * sizeof(std::complex<float>));
    }
  } else {
    std::vector<std::complex<double>> row(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      for (std::uint32_t l = 0; l < n; ++l) row[l] = v(k, l);
      out.write(reinterpret_cast<const char*>(row.data()), n * sizeof(std::complex<double>));
    }
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

LoadedField read_field_cache(const std::filesystem::path& path, bool attach_source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open field cache '" + path.string() + "'");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw DataError("'" + path.string() + "' is not a field cache");
  const auto width = get<std::uint32_t>(in);
  if (width != 8 && width != 16) throw DataError("unsupported sample width in field cache");
  const double L = get<double>(in);
  const double delta = get<double>(in);
  const double T = get<double>(in);
  const auto margin = get<std::int32_t>(in);
  FieldCacheInfo info;
  info.sigma = get<double>(in);
  info.seed = get<std::uint64_t>(in);
  const auto len = get<std::uint32_t>(in);
  if (len > 256) throw DataError("corrupt signal descriptor in field cache");
  std::string descriptor(len, '\0');
  if (!in.read(descriptor.data(), len)) throw DataError("truncated field cache");
  info.precision = width == 8 ? Precision::Single : Precision::Double;

  GridSpec grid;
  try {
    grid = make_grid(L, delta, T, margin);
    info.signal = parse_signal(descriptor, info.sigma);
  } catch (const ConfigError& e) {
    throw DataError(std::string("field cache header: ") + e.what());
  }
  const auto rows = get<std::uint32_t>(in);
  const auto cols = get<std::uint32_t>(in);
  if (rows != static_cast<std::uint32_t>(grid.size()) || cols != rows)
    throw DataError("field cache dimensions do not match its grid");

  WeightedField<double>::Values values(rows, cols);
  if (width == 8) {
    std::vector<std::complex<float>> row(cols);
    for (std::uint32_t k = 0; k < rows; ++k) {
      if (!in.read(reinterpret_cast<char*>(row.data()), cols * sizeof(std::complex<float>)))
        throw DataError("truncated field cache payload");
      for (std::uint32_t l = 0; l < cols; ++l) values(k, l) = Complex(row[l]);
    }
  } else {
    std::vector<std::complex<double>> row(cols);
    for (std::uint32_t k = 0; k < rows; ++k) {
      if (!in.read(reinterpret_cast<char*>(row.data()), cols * sizeof(std::complex<double>)))
        throw DataError("truncated field cache payload");
      for (std::uint32_t l = 0; l < cols; ++l) values(k, l) = row[l];
    }
  }

  std::shared_ptr<const FieldSource> source;
  if (attach_source)
    source = std::make_shared<const FieldSource>(
        FieldSource{grid, draw_noise(grid, info.sigma, info.seed), info.signal});
  return {WeightedField<double>(grid, std::move(values), std::move(source)), info};
}

void write_points_csv(std::ostream& out, const PointSet& points, std::uint64_t seed,
                      const std::string& config_hash) {
  out << "# config_hash=" << config_hash << "\n";
  out << "re,im,k,l,method,delta,seed\n";
  const std::string method(method_name(points.method));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex z = points.location(i);
    out << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << points.points[i].a << ','
        << points.points[i].b << ',' << method << ',' << fmt(points.delta) << ',' << seed << '\n';
  }
}

PointSet read_points_csv(std::istream& in, double domain_halfwidth) {
  PointSet out;
  out.domain_halfwidth = domain_halfwidth;
  std::string line;
  bool header = false, first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "re,im,k,l,method,delta,seed") throw DataError("unexpected point CSV header");
      header = true;
      continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != 7) throw DataError("point CSV row has " + std::to_string(cells.size()) +
                                           " columns");
    try {
      const Method m = parse_method(cells[4]);
      const double d = std::stod(cells[5]);
      if (first) {
        out.method = m;
        out.delta = d;
        first = false;
      } else if (m != out.method || d != out.delta) {
        throw DataError("point CSV mixes methods or spacings");
      }
      out.points.push_back({std::stoi(cells[2]), std::stoi(cells[3])});
    } catch (const std::logic_error&) {
      throw DataError("malformed point CSV row '" + line + "'");
    } catch (const ConfigError& e) {
      throw DataError(e.what());
    }
  }
  if (!header) throw DataError("point CSV has no header");
  return out;
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows,
                     const std::string& config_hash) {
  out << "# config_hash=" << config_hash << "\n";
  out << "estimator,method,signal,A,sigma,delta,theta_halfwidth,R,mean,std,se\n";
  for (const auto& r : rows)
    out << r.estimator << ',' << r.method << ',' << r.signal << ',' << fmt(r.A) << ','
        << fmt(r.sigma) << ',' << fmt(r.delta) << ',' << fmt(r.theta_halfwidth) << ','
        << r.summary.n << ',' << fmt(r.summary.mean) << ',' << fmt(r.summary.std) << ','
        << fmt(r.summary.se) << '\n';
}

void write_consistency_csv(std::ostream& out, const std::vector<ConsistencyRow>& rows,
                           const std::string& config_hash) {
  out << "# config_hash=" << config_hash << "\n";
  out << "seed,method,delta_hi,delta_lo,n_hi,n_lo,certificate,max_distortion\n";
  for (const auto& r : rows)
    out << r.seed << ',' << method_name(r.method) << ',' << fmt(r.delta_hi) << ','
        << fmt(r.delta_lo) << ',' << r.n_hi << ',' << r.n_lo << ',' << r.certificate << ','
        << fmt(r.max_distortion) << '\n';
}

void write_failure_table(std::ostream& out, const std::vector<double>& deltas,
                         const std::vector<Method>& methods,
                         const std::vector<std::vector<double>>& rates,
                         const std::string& config_hash) {
  out << "# config_hash=" << config_hash << "\n";
  out << "delta";
  for (const Method m : methods) out << ',' << method_name(m);
  out << '\n';
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    out << format_spacing(deltas[i]);
    for (std::size_t j = 0; j < methods.size(); ++j) out << ',' << fmt(rates.at(i).at(j));
    out << '\n';
  }
}

}  // namespace zeroset
