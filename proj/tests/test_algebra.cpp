#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "transbound/complex.hpp"
#include "transbound/embedding.hpp"
#include "transbound/rng.hpp"

using namespace transbound;

namespace {
ComplexVector random_vector(Rng& rng, std::size_t d, double scale = 3.0) {
    ComplexVector v(d);
    for (std::size_t i = 0; i < d; ++i) {
        v.re[i] = uniform_range(rng, -scale, scale);
        v.im[i] = uniform_range(rng, -scale, scale);
    }
    return v;
}
} // namespace

TEST_CASE("conjugate negates the imaginary part") {
    ComplexVector v{{1.0}, {2.0}};
    ComplexVector c = conjugate(v);
    CHECK(c.re[0] == 1.0);
    CHECK(c.im[0] == -2.0);

    ComplexVector real_only{{0.5, -0.25}, {0.0, 0.0}};
    CHECK(conjugate(real_only) == real_only);

    Rng rng = make_stream(1, 1);
    for (int i = 0; i < 50; ++i) {
        ComplexVector w = random_vector(rng, 4);
        CHECK(conjugate(conjugate(w)) == w);
    }
}

TEST_CASE("norms match hand arithmetic") {
    CHECK(norm(ComplexVector{{3.0}, {4.0}}, Norm::L2) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(norm(ComplexVector(7), Norm::L2) == 0.0);
    CHECK(norm(ComplexVector(7), Norm::L1) == 0.0);
    CHECK(norm(ComplexVector{{1.0, -1.0}, {0.0, 0.0}}, Norm::L1) == 2.0);
}

TEST_CASE("norm properties on random vectors") {
    Rng rng = make_stream(2, 7);
    for (int i = 0; i < 200; ++i) {
        ComplexVector a = random_vector(rng, 6);
        ComplexVector b = random_vector(rng, 6);
        double c = uniform_range(rng, -4.0, 4.0);
        for (Norm p : {Norm::L1, Norm::L2}) {
            CHECK(norm(add(a, b), p) <= norm(a, p) + norm(b, p) + 1e-12);
            double lhs = norm(scale(a, c), p);
            double rhs = std::fabs(c) * norm(a, p);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            CHECK(norm(conjugate(a), p) == norm(a, p));
        }
    }
}

TEST_CASE("init_table is deterministic and bounded") {
    EmbeddingTable a = init_table(20, 5, 100, Mode::complex_, 123);
    EmbeddingTable b = init_table(20, 5, 100, Mode::complex_, 123);
    CHECK(a == b);
    EmbeddingTable c = init_table(20, 5, 100, Mode::complex_, 124);
    CHECK(a != c);

    double bound = 6.0 / std::sqrt(100.0);
    for (std::size_t e = 0; e < a.num_entities(); ++e)
        for (double x : a.entity_re(e)) {
            CHECK(x >= -bound);
            CHECK(x <= bound);
        }

    EmbeddingTable real = init_table(4, 2, 8, Mode::real, 99);
    for (std::size_t e = 0; e < real.num_entities(); ++e)
        for (double x : real.entity_im(e)) CHECK(x == 0.0);
    for (std::size_t r = 0; r < real.num_relations(); ++r)
        for (double x : real.relation_im(r)) CHECK(x == 0.0);

    CHECK_THROWS_AS(init_table(0, 2, 8, Mode::real, 1), ConfigError);
    CHECK_THROWS_AS(init_table(2, 0, 8, Mode::real, 1), ConfigError);
    CHECK_THROWS_AS(init_table(2, 2, 0, Mode::real, 1), ConfigError);
}

TEST_CASE("checkpoint round-trips bit for bit") {
    namespace fs = std::filesystem;
    EmbeddingTable t = init_table(7, 3, 12, Mode::complex_, 2024);
    t.set_step(41);
    fs::path path = fs::temp_directory_path() / "transbound_ckpt_test.ckpt";
    save_checkpoint(t, path);
    CHECK(!fs::exists(path.string() + ".tmp"));
    EmbeddingTable back = load_checkpoint(path);
    CHECK(back == t);
    CHECK(back.seed() == 2024);
    CHECK(back.step() == 41);
    fs::remove(path);
}

TEST_CASE("unit projection caps entity norms at one") {
    EmbeddingTable t = init_table(5, 1, 16, Mode::complex_, 5);
    t.project_entities_unit_l2();
    for (std::size_t e = 0; e < t.num_entities(); ++e) {
        double sq = 0.0;
        for (double x : t.entity_re(e)) sq += x * x;
        for (double x : t.entity_im(e)) sq += x * x;
        CHECK(sq <= 1.0 + 1e-12);
    }
}
