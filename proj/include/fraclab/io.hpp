#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "operator.hpp"

namespace fraclab::io {

namespace fs = std::filesystem;

inline void write_field_csv(const fs::path& path, const DiscreteOperator& op, const Field& u) {
    std::ofstream out(path);
    out << "node,x,d,value\n" << std::setprecision(17);
    const auto d = op.distances();
    for (int i = 0; i < op.size(); ++i) out << i << ',' << op.grid.nodes[i] << ',' << d[i] << ',' << u[i] << '\n';
}

inline void write_columns_csv(const fs::path& path, const std::vector<std::string>& header,
                              const std::vector<std::vector<double>>& cols) {
    std::ofstream out(path);
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n' << std::setprecision(17);
    const std::size_t rows = cols.empty() ? 0 : cols.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k][r];
        out << '\n';
    }
}

// Binary operator cache.  Header: 8-byte magic, then little-endian int64 {kind, N, n, version} and
// float64 {s, R, h, near_coefficient, interpolation_defect}, then the symmetric matrix row-major and
// the cell volumes.
namespace cache {

inline constexpr char kMagic[8] = {'F', 'R', 'A', 'C', 'O', 'P', '0', '1'};

inline void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
    os.write(reinterpret_cast<const char*>(b), 8);
}
inline std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    return v;
}
inline void put_f64(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }
inline double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }
inline void put_i64(std::ostream& os, std::int64_t v) { put_u64(os, static_cast<std::uint64_t>(v)); }
inline std::int64_t get_i64(std::istream& is) { return static_cast<std::int64_t>(get_u64(is)); }

inline std::string key(DomainKind kind, int N, double s, double R, int n) {
    std::ostringstream k;
    k << (kind == DomainKind::Interval ? "interval" : "radial") << "_N" << N << "_s" << std::hexfloat << s << "_R" << R
      << std::defaultfloat << "_n" << n << "_v" << kQuadratureVersion << ".bin";
    return k.str();
}

inline void save(const fs::path& path, const DiscreteOperator& op) {
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out.write(kMagic, 8);
        put_i64(out, op.domain.kind == DomainKind::Interval ? 0 : 1);
        put_i64(out, op.params.N);
        put_i64(out, op.size());
        put_i64(out, op.meta.version);
        put_f64(out, op.params.s);
        put_f64(out, op.domain.R);
        put_f64(out, op.grid.h);
        put_f64(out, op.meta.near_coefficient);
        put_f64(out, op.meta.interpolation_defect);
        const auto& S = op.symmetric();
        for (int i = 0; i < op.size(); ++i)
            for (int j = 0; j < op.size(); ++j) put_f64(out, S(i, j));
        for (int i = 0; i < op.size(); ++i) put_f64(out, op.volumes()[i]);
    }
    fs::rename(tmp, path);
}

inline std::optional<DiscreteOperator> load(const fs::path& path, const FracParams& params, const Domain& domain,
                                            int n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    in.read(magic, 8);
    if (!in || !std::equal(magic, magic + 8, kMagic)) return std::nullopt;
    const auto kind = get_i64(in), N = get_i64(in), nn = get_i64(in), ver = get_i64(in);
    const double s = get_f64(in), R = get_f64(in), h = get_f64(in);
    QuadratureMeta meta;
    meta.near_coefficient = get_f64(in);
    meta.interpolation_defect = get_f64(in);
    meta.version = static_cast<int>(ver);
    const bool match = kind == (domain.kind == DomainKind::Interval ? 0 : 1) && N == params.N && nn == n &&
                       ver == kQuadratureVersion && s == params.s && R == domain.R;
    if (!match) return std::nullopt;
    Eigen::MatrixXd S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = get_f64(in);
    Eigen::VectorXd vol(n);
    for (int i = 0; i < n; ++i) vol[i] = get_f64(in);
    if (!in) return std::nullopt;
    GridSpec grid = make_grid(domain, n);
    grid.h = h;
    meta.near_rule = "cached";
    meta.tail_rule = "cached";
    meta.boundary_rule = "cached";
    return DiscreteOperator(params, domain, std::move(grid), std::move(S), std::move(vol), std::move(meta));
}

}  // namespace cache

// Assemble or fetch from the cache directory (empty path disables caching).
inline DiscreteOperator cached_assemble(const FracParams& params, const Domain& domain, int n, const fs::path& dir) {
    if (dir.empty()) return assemble(params, domain, n);
    const fs::path file = dir / cache::key(domain.kind, params.N, params.s, domain.R, n);
    if (auto op = cache::load(file, params, domain, n)) return *op;
    auto op = assemble(params, domain, n);
    cache::save(file, op);
    return op;
}

}  // namespace fraclab::io
