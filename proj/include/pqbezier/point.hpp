#pragma once

#include "pqbezier/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pqbezier {

/// A point (or vector) in R^d with coordinates in the chosen arithmetic mode.
template <Scalar T>
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dimension) : coords_(dimension, T{0}) {}
    explicit Point(std::vector<T> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<T> coords) : coords_(coords) {}

    std::size_t dimension() const { return coords_.size(); }
    const T& operator[](std::size_t i) const { return coords_[i]; }
    T& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<T>& coords() const { return coords_; }

    Point& operator+=(const Point& o) {
        check_same(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        check_same(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    Point& operator*=(const T& s) {
        for (auto& c : coords_) c *= s;
        return *this;
    }
    Point& operator/=(const T& s) {
        for (auto& c : coords_) c /= s;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator-(Point a) {
        for (auto& c : a.coords_) c = -c;
        return a;
    }
    friend Point operator*(Point a, const T& s) { return a *= s; }
    friend Point operator*(const T& s, Point a) { return a *= s; }
    friend Point operator/(Point a, const T& s) { return a /= s; }
    friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

private:
    void check_same(const Point& o) const {
        if (o.coords_.size() != coords_.size())
            throw std::invalid_argument("point dimension mismatch");
    }

    std::vector<T> coords_;
};

template <Scalar T>
T zero_like(const T&) {
    return T{0};
}

template <Scalar T>
Point<T> zero_like(const Point<T>& p) {
    return Point<T>(p.dimension());
}

template <Scalar T>
Point<double> to_double(const Point<T>& p) {
    std::vector<double> c;
    c.reserve(p.dimension());
    for (const auto& v : p.coords()) c.push_back(to_double(v));
    return Point<double>(std::move(c));
}

}  // namespace pqbezier
