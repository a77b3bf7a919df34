#pragma once

#include "pqbezier/point.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace pqbezier {

/// Monomial-form polynomial a_0 + a_1 t + ... + a_n t^n with scalar or point
/// coefficients. The degree bound is coefficients().size() - 1; trailing zeros
/// are kept since the blossoming degree may exceed the true degree.
template <class V>
class Polynomial {
public:
    explicit Polynomial(std::vector<V> coefficients) : coeffs_(std::move(coefficients)) {
        if (coeffs_.empty()) throw std::invalid_argument("Polynomial: needs at least one coefficient");
    }

    int degree_bound() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<V>& coefficients() const { return coeffs_; }
    const V& operator[](std::size_t k) const { return coeffs_[k]; }

    template <Scalar T>
    V operator()(const T& t) const {
        V acc = coeffs_.back();
        for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<V> coeffs_;
};

}  // namespace pqbezier
