#pragma once

#include <vector>

#include "steadytime/rational.hpp"

namespace steadytime {

/// Dense polynomial in the monomial basis, ascending degree.
/// Coefficients live in the global coordinate (no per-piece shift).
template <class T>
class Polynomial {
public:
    Polynomial() : coeffs_(1, T(0)) {}
    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(T(0));
        trim();
    }
    static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }

    const std::vector<T>& coeffs() const { return coeffs_; }
    int degree() const { return int(coeffs_.size()) - 1; }

    T operator()(const T& x) const {
        T acc = coeffs_.back();
        for (int i = int(coeffs_.size()) - 2; i >= 0; --i)
            acc = acc * x + coeffs_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() == 1) return Polynomial();
        std::vector<T> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d[i - 1] = coeffs_[i] * field_from_int<T>(long(i));
        return Polynomial(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        std::vector<T> a(coeffs_.size() + 1, T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            a[i + 1] = coeffs_[i] / field_from_int<T>(long(i + 1));
        return Polynomial(std::move(a));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<T> c(std::max(coeffs_.size(), o.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
        return Polynomial(std::move(c));
    }
    Polynomial operator-(const Polynomial& o) const {
        std::vector<T> c(std::max(coeffs_.size(), o.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
        return Polynomial(std::move(c));
    }
    Polynomial operator*(const Polynomial& o) const {
        std::vector<T> c(coeffs_.size() + o.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(c));
    }
    Polynomial scaled(const T& s) const {
        std::vector<T> c = coeffs_;
        for (auto& v : c) v = v * s;
        return Polynomial(std::move(c));
    }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    void trim() {
        while (coeffs_.size() > 1 && is_zero(coeffs_.back())) coeffs_.pop_back();
    }
    std::vector<T> coeffs_;
};

} // namespace steadytime
