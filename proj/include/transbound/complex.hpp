#ifndef TRANSBOUND_COMPLEX_HPP
#define TRANSBOUND_COMPLEX_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "transbound/errors.hpp"

namespace transbound {

enum class Norm { L1, L2 };

// A complex vector stored as parallel real/imaginary coordinate arrays.
// Real-mode embeddings keep im identically zero.
struct ComplexVector {
    std::vector<double> re;
    std::vector<double> im;

    ComplexVector() = default;
    explicit ComplexVector(std::size_t d) : re(d, 0.0), im(d, 0.0) {}
    ComplexVector(std::vector<double> re_, std::vector<double> im_)
        : re(std::move(re_)), im(std::move(im_)) {
        if (re.size() != im.size())
            throw ContractError("complex vector parts differ in length");
    }

    std::size_t dim() const { return re.size(); }

    bool operator==(const ComplexVector& o) const = default;
};

inline ComplexVector conjugate(const ComplexVector& v) {
    ComplexVector out = v;
    for (double& x : out.im) x = -x;
    return out;
}

inline ComplexVector add(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.re[i] = a.re[i] + b.re[i];
        out.im[i] = a.im[i] + b.im[i];
    }
    return out;
}

inline ComplexVector sub(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.re[i] = a.re[i] - b.re[i];
        out.im[i] = a.im[i] - b.im[i];
    }
    return out;
}

inline ComplexVector scale(const ComplexVector& a, double c) {
    ComplexVector out = a;
    for (double& x : out.re) x *= c;
    for (double& x : out.im) x *= c;
    return out;
}

// L2: sqrt(sum re^2 + im^2); L1: sum |re| + |im|. Zero iff v == 0.
inline double norm(const ComplexVector& v, Norm p) {
    double acc = 0.0;
    if (p == Norm::L2) {
        for (std::size_t i = 0; i < v.dim(); ++i)
            acc += v.re[i] * v.re[i] + v.im[i] * v.im[i];
        return std::sqrt(acc);
    }
    for (std::size_t i = 0; i < v.dim(); ++i)
        acc += std::fabs(v.re[i]) + std::fabs(v.im[i]);
    return acc;
}

inline double norm_l2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

inline double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace transbound

#endif
