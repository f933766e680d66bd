#include "frac_iga/operator_cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace frac_iga {

namespace {

constexpr char kMagic[8] = {'F', 'I', 'G', 'A', 'O', 'P', '0', '1'};

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void put_u64(std::ostream& os, uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), 8);
}

void put_i64(std::ostream& os, int64_t v) { put_u64(os, static_cast<uint64_t>(v)); }

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<uint64_t>(v)); }

bool get_u64(std::istream& is, uint64_t& v) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(buf[i]) << (8 * i);
    return true;
}

bool get_i64(std::istream& is, int64_t& v) {
    uint64_t u;
    if (!get_u64(is, u)) return false;
    v = static_cast<int64_t>(u);
    return true;
}

bool get_f64(std::istream& is, double& v) {
    uint64_t u;
    if (!get_u64(is, u)) return false;
    v = std::bit_cast<double>(u);
    return true;
}

}  // namespace

uint64_t operator_content_hash(const nlohmann::json& surface_json,
                               const DiscretizationParams& params, int refinement_level) {
    const std::string s = surface_json.dump();
    uint64_t h = fnv1a(s.data(), s.size());
    const double vals[5] = {params.s.value(), params.window_a, params.stencil_h,
                            params.truncation_R, 0.0};
    h = fnv1a(vals, sizeof(vals), h);
    const int64_t ints[3] = {params.n_radial, params.m_angular, refinement_level};
    h = fnv1a(ints, sizeof(ints), h);
    return h;
}

void save_operator_cache(const std::string& path, const OperatorPair& ops,
                         uint64_t content_hash) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open cache file for writing: " + path);
    os.write(kMagic, sizeof(kMagic));
    put_u64(os, content_hash);
    const int n = ops.points.count();
    put_i64(os, n);
    put_i64(os, ops.points.count_u);
    put_i64(os, ops.points.count_v);
    for (int k = 0; k < n; ++k) {
        put_f64(os, ops.points.params[k].x);
        put_f64(os, ops.points.params[k].y);
        put_f64(os, ops.points.points[k].x);
        put_f64(os, ops.points.points[k].y);
    }
    put_i64(os, static_cast<int64_t>(ops.points.interior.size()));
    for (int k : ops.points.interior) put_i64(os, k);
    for (int k = 0; k < n; ++k) {
        const SparseRow& row = ops.interpolation[k];
        put_i64(os, static_cast<int64_t>(row.cols.size()));
        for (size_t j = 0; j < row.cols.size(); ++j) {
            put_i64(os, row.cols[j]);
            put_f64(os, row.vals[j]);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) put_f64(os, ops.laplacian(i, j));
    }
    if (!os) throw std::runtime_error("failed writing cache file: " + path);
}

std::optional<OperatorPair> load_operator_cache(const std::string& path,
                                                uint64_t expected_hash) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;
    uint64_t hash;
    if (!get_u64(is, hash) || hash != expected_hash) return std::nullopt;
    int64_t n, cu, cv;
    if (!get_i64(is, n) || !get_i64(is, cu) || !get_i64(is, cv)) return std::nullopt;
    if (n <= 0 || cu <= 0 || cv <= 0 || cu * cv != n) return std::nullopt;

    OperatorPair ops;
    ops.points.count_u = static_cast<int>(cu);
    ops.points.count_v = static_cast<int>(cv);
    ops.points.params.resize(n);
    ops.points.points.resize(n);
    for (int64_t k = 0; k < n; ++k) {
        if (!get_f64(is, ops.points.params[k].x) || !get_f64(is, ops.points.params[k].y) ||
            !get_f64(is, ops.points.points[k].x) || !get_f64(is, ops.points.points[k].y)) {
            return std::nullopt;
        }
    }
    int64_t n_int;
    if (!get_i64(is, n_int) || n_int < 0 || n_int > n) return std::nullopt;
    std::vector<char> is_interior(n, 0);
    ops.points.interior.resize(n_int);
    for (int64_t k = 0; k < n_int; ++k) {
        int64_t v;
        if (!get_i64(is, v) || v < 0 || v >= n) return std::nullopt;
        ops.points.interior[k] = static_cast<int>(v);
        is_interior[v] = 1;
    }
    for (int64_t k = 0; k < n; ++k) {
        if (!is_interior[k]) ops.points.boundary.push_back(static_cast<int>(k));
    }
    ops.interpolation.resize(n);
    for (int64_t k = 0; k < n; ++k) {
        int64_t nnz;
        if (!get_i64(is, nnz) || nnz < 0 || nnz > n) return std::nullopt;
        SparseRow& row = ops.interpolation[k];
        row.cols.resize(nnz);
        row.vals.resize(nnz);
        for (int64_t j = 0; j < nnz; ++j) {
            int64_t col;
            if (!get_i64(is, col) || col < 0 || col >= n) return std::nullopt;
            row.cols[j] = static_cast<int>(col);
            if (!get_f64(is, row.vals[j])) return std::nullopt;
        }
    }
    ops.laplacian = DenseMatrix(static_cast<int>(n), static_cast<int>(n));
    for (int64_t i = 0; i < n; ++i) {
        for (int64_t j = 0; j < n; ++j) {
            if (!get_f64(is, ops.laplacian(static_cast<int>(i), static_cast<int>(j)))) {
                return std::nullopt;
            }
        }
    }
    return ops;
}

}  // namespace frac_iga
