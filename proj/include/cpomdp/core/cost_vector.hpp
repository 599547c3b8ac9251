#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace cpomdp {

// Fixed-capacity cost vector. Constraint counts are tiny (K = 0..2 in the
// bundled problems) and these flow through every tree backup, so no heap.
class CostVec {
public:
    static constexpr std::size_t kMaxCosts = 4;

    CostVec() = default;

    explicit CostVec(std::size_t k, double fill = 0.0) : size_(k) {
        assert(k <= kMaxCosts);
        data_.fill(0.0);
        for (std::size_t i = 0; i < k; ++i) data_[i] = fill;
    }

    CostVec(std::initializer_list<double> values) : size_(values.size()) {
        assert(values.size() <= kMaxCosts);
        data_.fill(0.0);
        std::copy(values.begin(), values.end(), data_.begin());
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    double operator[](std::size_t i) const {
        assert(i < size_);
        return data_[i];
    }
    double& operator[](std::size_t i) {
        assert(i < size_);
        return data_[i];
    }

    const double* begin() const { return data_.data(); }
    const double* end() const { return data_.data() + size_; }

    CostVec& operator+=(const CostVec& o) {
        assert(size_ == o.size_);
        for (std::size_t i = 0; i < size_; ++i) data_[i] += o.data_[i];
        return *this;
    }

    CostVec& operator-=(const CostVec& o) {
        assert(size_ == o.size_);
        for (std::size_t i = 0; i < size_; ++i) data_[i] -= o.data_[i];
        return *this;
    }

    CostVec& operator*=(double s) {
        for (std::size_t i = 0; i < size_; ++i) data_[i] *= s;
        return *this;
    }

    friend CostVec operator+(CostVec a, const CostVec& b) { return a += b; }
    friend CostVec operator-(CostVec a, const CostVec& b) { return a -= b; }
    friend CostVec operator*(CostVec a, double s) { return a *= s; }
    friend CostVec operator*(double s, CostVec a) { return a *= s; }

    friend bool operator==(const CostVec& a, const CostVec& b) {
        if (a.size_ != b.size_) return false;
        for (std::size_t i = 0; i < a.size_; ++i)
            if (a.data_[i] != b.data_[i]) return false;
        return true;
    }

    double dot(const CostVec& o) const {
        assert(size_ == o.size_);
        double s = 0.0;
        for (std::size_t i = 0; i < size_; ++i) s += data_[i] * o.data_[i];
        return s;
    }

    // Running-mean update: this += (sample - this) / n.
    void mean_update(const CostVec& sample, double n) {
        assert(size_ == sample.size_);
        for (std::size_t i = 0; i < size_; ++i) data_[i] += (sample.data_[i] - data_[i]) / n;
    }

    void clamp_nonnegative() {
        for (std::size_t i = 0; i < size_; ++i) data_[i] = std::max(0.0, data_[i]);
    }

    bool all_leq(const CostVec& o, double slack = 0.0) const {
        assert(size_ == o.size_);
        for (std::size_t i = 0; i < size_; ++i)
            if (data_[i] > o.data_[i] + slack) return false;
        return true;
    }

    double max_violation(const CostVec& budget) const {
        assert(size_ == budget.size_);
        double v = 0.0;
        for (std::size_t i = 0; i < size_; ++i) v = std::max(v, data_[i] - budget[i]);
        return v;
    }

    std::vector<double> to_vector() const { return {begin(), end()}; }

private:
    std::array<double, kMaxCosts> data_{};
    std::size_t size_ = 0;
};

}  // namespace cpomdp
