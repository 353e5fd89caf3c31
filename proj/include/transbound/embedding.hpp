#ifndef TRANSBOUND_EMBEDDING_HPP
#define TRANSBOUND_EMBEDDING_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "transbound/complex.hpp"
#include "transbound/errors.hpp"
#include "transbound/rng.hpp"

namespace transbound {

enum class Mode { real, complex_ };

inline const char* to_string(Mode m) { return m == Mode::real ? "real" : "complex"; }

// Entity and relation embeddings as contiguous row-major blocks, one block
// per coordinate part. Real mode keeps every imaginary coordinate at 0.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    EmbeddingTable(std::size_t num_entities, std::size_t num_relations,
                   std::size_t dim, Mode mode)
        : num_entities_(num_entities), num_relations_(num_relations),
          dim_(dim), mode_(mode),
          ent_re_(num_entities * dim, 0.0), ent_im_(num_entities * dim, 0.0),
          rel_re_(num_relations * dim, 0.0), rel_im_(num_relations * dim, 0.0) {
        if (dim == 0) throw ConfigError("embedding dimension must be >= 1");
        if (num_entities == 0 || num_relations == 0)
            throw ConfigError("embedding table needs at least one entity and one relation");
    }

    std::size_t num_entities() const { return num_entities_; }
    std::size_t num_relations() const { return num_relations_; }
    std::size_t dim() const { return dim_; }
    Mode mode() const { return mode_; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t step() const { return step_; }
    void set_seed(std::uint64_t s) { seed_ = s; }
    void set_step(std::uint64_t s) { step_ = s; }

    std::span<double> entity_re(std::size_t i) { return {ent_re_.data() + i * dim_, dim_}; }
    std::span<double> entity_im(std::size_t i) { return {ent_im_.data() + i * dim_, dim_}; }
    std::span<double> relation_re(std::size_t i) { return {rel_re_.data() + i * dim_, dim_}; }
    std::span<double> relation_im(std::size_t i) { return {rel_im_.data() + i * dim_, dim_}; }
    std::span<const double> entity_re(std::size_t i) const { return {ent_re_.data() + i * dim_, dim_}; }
    std::span<const double> entity_im(std::size_t i) const { return {ent_im_.data() + i * dim_, dim_}; }
    std::span<const double> relation_re(std::size_t i) const { return {rel_re_.data() + i * dim_, dim_}; }
    std::span<const double> relation_im(std::size_t i) const { return {rel_im_.data() + i * dim_, dim_}; }

    ComplexVector entity(std::size_t i) const {
        auto re = entity_re(i); auto im = entity_im(i);
        return {{re.begin(), re.end()}, {im.begin(), im.end()}};
    }
    ComplexVector relation(std::size_t i) const {
        auto re = relation_re(i); auto im = relation_im(i);
        return {{re.begin(), re.end()}, {im.begin(), im.end()}};
    }
    void set_entity(std::size_t i, const ComplexVector& v) {
        copy_into(entity_re(i), v.re); copy_into(entity_im(i), v.im);
    }
    void set_relation(std::size_t i, const ComplexVector& v) {
        copy_into(relation_re(i), v.re); copy_into(relation_im(i), v.im);
    }

    double mean_relation_norm(Norm p = Norm::L2) const {
        double acc = 0.0;
        for (std::size_t r = 0; r < num_relations_; ++r)
            acc += norm(relation(r), p);
        return acc / static_cast<double>(num_relations_);
    }

    bool all_finite() const {
        for (const auto* block : {&ent_re_, &ent_im_, &rel_re_, &rel_im_})
            for (double x : *block)
                if (!std::isfinite(x)) return false;
        return true;
    }

    // Optional ablation hook: project every entity onto the unit L2 ball.
    void project_entities_unit_l2() {
        for (std::size_t e = 0; e < num_entities_; ++e) {
            double sq = 0.0;
            auto re = entity_re(e); auto im = entity_im(e);
            for (std::size_t i = 0; i < dim_; ++i) sq += re[i] * re[i] + im[i] * im[i];
            double n = std::sqrt(sq);
            if (n > 1.0) {
                for (std::size_t i = 0; i < dim_; ++i) { re[i] /= n; im[i] /= n; }
            }
        }
    }

    bool operator==(const EmbeddingTable& o) const = default;

private:
    static void copy_into(std::span<double> dst, const std::vector<double>& src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
    }

    std::size_t num_entities_ = 0;
    std::size_t num_relations_ = 0;
    std::size_t dim_ = 0;
    Mode mode_ = Mode::real;
    std::uint64_t seed_ = 0;
    std::uint64_t step_ = 0;
    std::vector<double> ent_re_, ent_im_, rel_re_, rel_im_;
};

// Coordinates drawn i.i.d. uniform on [-6/sqrt(d), +6/sqrt(d)] from a seeded
// generator; identical seeds give bit-identical tables.
inline EmbeddingTable init_table(std::size_t num_entities, std::size_t num_relations,
                                 std::size_t dim, Mode mode, std::uint64_t seed) {
    EmbeddingTable t(num_entities, num_relations, dim, mode);
    t.set_seed(seed);
    double bound = 6.0 / std::sqrt(static_cast<double>(dim));
    Rng rng = make_stream(seed, /*a=*/0x696e6974ULL);
    for (std::size_t e = 0; e < num_entities; ++e) {
        for (double& x : t.entity_re(e)) x = uniform_range(rng, -bound, bound);
        if (mode == Mode::complex_)
            for (double& x : t.entity_im(e)) x = uniform_range(rng, -bound, bound);
    }
    for (std::size_t r = 0; r < num_relations; ++r) {
        for (double& x : t.relation_re(r)) x = uniform_range(rng, -bound, bound);
        if (mode == Mode::complex_)
            for (double& x : t.relation_im(r)) x = uniform_range(rng, -bound, bound);
    }
    return t;
}

// Checkpoint layout (little-endian, documented in the README):
//   bytes 0..7   magic "TBCKPT1\n"
//   u32          mode (0 real, 1 complex)
//   u64 x3       dim, num_entities, num_relations
//   u64 x2       seed, step
//   f64 blocks   entities re, entities im, relations re, relations im
//                (each row-major, count rows*dim)
namespace detail {
inline constexpr char kCheckpointMagic[8] = {'T','B','C','K','P','T','1','\n'};

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
void read_pod(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
} // namespace detail

inline void save_checkpoint(const EmbeddingTable& t, const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ConfigError("cannot open checkpoint for writing: " + path.string());
        os.write(detail::kCheckpointMagic, sizeof(detail::kCheckpointMagic));
        detail::write_pod(os, static_cast<std::uint32_t>(t.mode() == Mode::complex_ ? 1 : 0));
        detail::write_pod(os, static_cast<std::uint64_t>(t.dim()));
        detail::write_pod(os, static_cast<std::uint64_t>(t.num_entities()));
        detail::write_pod(os, static_cast<std::uint64_t>(t.num_relations()));
        detail::write_pod(os, t.seed());
        detail::write_pod(os, t.step());
        auto write_rows = [&](auto get, std::size_t n) {
            for (std::size_t i = 0; i < n; ++i) {
                auto r = get(i);
                os.write(reinterpret_cast<const char*>(r.data()),
                         static_cast<std::streamsize>(r.size() * sizeof(double)));
            }
        };
        write_rows([&](std::size_t i) { return t.entity_re(i); }, t.num_entities());
        write_rows([&](std::size_t i) { return t.entity_im(i); }, t.num_entities());
        write_rows([&](std::size_t i) { return t.relation_re(i); }, t.num_relations());
        write_rows([&](std::size_t i) { return t.relation_im(i); }, t.num_relations());
        if (!os) throw ConfigError("short write on checkpoint: " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline EmbeddingTable load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open checkpoint: " + path.string());
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, detail::kCheckpointMagic, sizeof(magic)) != 0)
        throw ParseError("bad checkpoint magic in " + path.string(), 0);
    std::uint32_t mode_u = 0;
    std::uint64_t dim = 0, ne = 0, nr = 0, seed = 0, step = 0;
    detail::read_pod(is, mode_u);
    detail::read_pod(is, dim);
    detail::read_pod(is, ne);
    detail::read_pod(is, nr);
    detail::read_pod(is, seed);
    detail::read_pod(is, step);
    if (!is) throw ParseError("truncated checkpoint header in " + path.string(), 0);
    EmbeddingTable t(ne, nr, dim, mode_u ? Mode::complex_ : Mode::real);
    t.set_seed(seed);
    t.set_step(step);
    auto read_rows = [&](auto get, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            auto r = get(i);
            is.read(reinterpret_cast<char*>(r.data()),
                    static_cast<std::streamsize>(r.size() * sizeof(double)));
        }
    };
    read_rows([&](std::size_t i) { return t.entity_re(i); }, t.num_entities());
    read_rows([&](std::size_t i) { return t.entity_im(i); }, t.num_entities());
    read_rows([&](std::size_t i) { return t.relation_re(i); }, t.num_relations());
    read_rows([&](std::size_t i) { return t.relation_im(i); }, t.num_relations());
    if (!is) throw ParseError("truncated checkpoint payload in " + path.string(), 0);
    return t;
}

} // namespace transbound

#endif
