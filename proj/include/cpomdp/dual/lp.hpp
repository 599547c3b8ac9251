#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace cpomdp {

// Dense two-phase simplex for the tiny LPs behind the stochastic policy:
// maximize c'x subject to Ax <= b, x >= 0. Problem sizes here are a handful
// of variables (the nu-close actions) and K+2 rows, so a tableau method is
// plenty. Pivoting ties break on index pairs, which keeps runs deterministic.
class SimplexLp {
public:
    enum class Status { Optimal, Infeasible, Unbounded };

    struct Result {
        Status status;
        double objective = 0.0;
        std::vector<double> x;
    };

    static Result solve(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                        const std::vector<double>& c) {
        SimplexLp lp(A, b, c);
        Result result;
        double value = lp.run(result.x);
        if (value == -kInf) {
            result.status = Status::Infeasible;
        } else if (value == kInf) {
            result.status = Status::Unbounded;
        } else {
            result.status = Status::Optimal;
            result.objective = value;
        }
        return result;
    }

private:
    static constexpr double kEps = 1e-9;
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    int m_, n_;
    std::vector<int> basic_, nonbasic_;
    std::vector<std::vector<double>> tab_;

    SimplexLp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
              const std::vector<double>& c)
        : m_(static_cast<int>(b.size())),
          n_(static_cast<int>(c.size())),
          basic_(m_),
          nonbasic_(n_ + 1),
          tab_(m_ + 2, std::vector<double>(n_ + 2)) {
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            tab_[i][n_] = -1.0;
            tab_[i][n_ + 1] = b[i];
        }
        for (int j = 0; j < n_; ++j) {
            nonbasic_[j] = j;
            tab_[m_][j] = -c[j];
        }
        nonbasic_[n_] = -1;
        tab_[m_ + 1][n_] = 1.0;
    }

    void pivot(int r, int s) {
        double* a = tab_[r].data();
        const double inv = 1.0 / a[s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i != r && std::fabs(tab_[i][s]) > kEps) {
                double* row = tab_[i].data();
                const double scale = row[s] * inv;
                for (int j = 0; j < n_ + 2; ++j) row[j] -= a[j] * scale;
                row[s] = a[s] * scale;
            }
        }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) tab_[r][j] *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) tab_[i][s] *= -inv;
        tab_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    bool iterate(int phase) {
        const int x = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (nonbasic_[j] == -phase) continue;
                if (s == -1 || std::make_pair(tab_[x][j], nonbasic_[j]) <
                                   std::make_pair(tab_[x][s], nonbasic_[s]))
                    s = j;
            }
            if (tab_[x][s] >= -kEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (tab_[i][s] <= kEps) continue;
                if (r == -1 ||
                    std::make_pair(tab_[i][n_ + 1] / tab_[i][s], basic_[i]) <
                        std::make_pair(tab_[r][n_ + 1] / tab_[r][s], basic_[r]))
                    r = i;
            }
            if (r == -1) return false;
            pivot(r, s);
        }
    }

    double run(std::vector<double>& x) {
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (tab_[i][n_ + 1] < tab_[r][n_ + 1]) r = i;
        if (m_ > 0 && tab_[r][n_ + 1] < -kEps) {
            pivot(r, n_);
            if (!iterate(2) || tab_[m_ + 1][n_ + 1] < -kEps) return -kInf;
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j)
                    if (std::make_pair(tab_[i][j], nonbasic_[j]) <
                        std::make_pair(tab_[i][s], nonbasic_[s]))
                        s = j;
                pivot(i, s);
            }
        }
        const bool ok = iterate(1);
        x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basic_[i] < n_) x[basic_[i]] = tab_[i][n_ + 1];
        return ok ? tab_[m_][n_ + 1] : kInf;
    }
};

}  // namespace cpomdp
