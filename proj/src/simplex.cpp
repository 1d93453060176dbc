#include "simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dmclp/errors.hpp"

namespace dmclp::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-7;
constexpr double kOptTol = 1e-7;
constexpr double kPivTol = 1e-9;
constexpr double kRatioTieTol = 1e-9;
constexpr int kBlandAfter = 60; // consecutive degenerate steps before Bland's rule

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class St : unsigned char { Basic, AtLower, AtUpper, FreeZero };

// Bounded-variable two-phase primal simplex on a dense tableau. Every
// constraint gets a slack (LE: s >= 0, GE: s <= 0, EQ: s = 0), so the working
// system is [A|I] x = b with box bounds. Dantzig pricing with a switch to
// Bland's rule under stalling; ties resolve by index so runs are reproducible.
class Simplex {
public:
    Simplex(const Model& model, const std::vector<double>& lo, const std::vector<double>& hi)
        : n_(static_cast<int>(model.vars.size())),
          m_(static_cast<int>(model.cons.size())),
          N_(n_ + m_) {
        lo_.assign(N_, 0.0);
        hi_.assign(N_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = lo[j];
            hi_[j] = hi[j];
        }
        b_ = Eigen::VectorXd::Zero(m_);
        cols_.assign(n_, {});
        for (int i = 0; i < m_; ++i) {
            const Constraint& c = model.cons[i];
            b_(i) = c.rhs;
            const int s = n_ + i;
            switch (c.sense) {
                case ConstrSense::LE: lo_[s] = 0.0; hi_[s] = kInf; break;
                case ConstrSense::GE: lo_[s] = -kInf; hi_[s] = 0.0; break;
                case ConstrSense::EQ: lo_[s] = 0.0; hi_[s] = 0.0; break;
            }
            for (const auto& t : c.terms) cols_[t.var].emplace_back(i, t.coef);
        }
        for (auto& col : cols_) {
            std::sort(col.begin(), col.end());
            size_t w = 0;
            for (size_t r = 0; r < col.size(); ++r) {
                if (w > 0 && col[w - 1].first == col[r].first)
                    col[w - 1].second += col[r].second;
                else
                    col[w++] = col[r];
            }
            col.resize(w);
        }
        cost_ = Eigen::VectorXd::Zero(N_);
        const double sgn = model.sense == ObjSense::Maximize ? -1.0 : 1.0;
        for (const auto& t : model.objective) cost_(t.var) += sgn * t.coef;
    }

    LpResult solve() {
        init_basis();
        for (int round = 0;; ++round) {
            if (!phase1()) return {LpStatus::Infeasible, {}, 0.0};
            if (!phase2()) return {LpStatus::Unbounded, {}, -kInf};
            if (residual_ok()) break;
            if (round >= 4) throw SolverError("simplex: numerical breakdown");
            refactor();
        }
        LpResult r;
        r.status = LpStatus::Optimal;
        r.x.assign(x_.data(), x_.data() + n_);
        r.obj = cost_.head(n_).dot(x_.head(n_));
        return r;
    }

private:
    int n_, m_, N_;
    std::vector<double> lo_, hi_;
    Eigen::VectorXd b_;
    std::vector<std::vector<std::pair<int, double>>> cols_; // structural columns of A
    Eigen::VectorXd cost_;

    RowMat T_;                // current B^-1 [A|I]
    Eigen::VectorXd x_;       // values of all N_ columns
    std::vector<int> basis_;  // row -> column
    std::vector<St> state_;   // column -> state
    Eigen::VectorXd dB_;      // per-row infeasibility signs during phase 1
    Eigen::VectorXd y_, z_, cb_;

    void init_basis() {
        T_ = RowMat::Zero(m_, N_);
        for (int j = 0; j < n_; ++j)
            for (const auto& [row, coef] : cols_[j]) T_(row, j) = coef;
        for (int i = 0; i < m_; ++i) T_(i, n_ + i) = 1.0;

        x_ = Eigen::VectorXd::Zero(N_);
        state_.assign(N_, St::AtLower);
        for (int j = 0; j < n_; ++j) {
            if (lo_[j] > -kInf) {
                state_[j] = St::AtLower;
                x_(j) = lo_[j];
            } else if (hi_[j] < kInf) {
                state_[j] = St::AtUpper;
                x_(j) = hi_[j];
            } else {
                state_[j] = St::FreeZero;
                x_(j) = 0.0;
            }
        }
        basis_.resize(m_);
        Eigen::VectorXd xb = b_;
        for (int j = 0; j < n_; ++j)
            if (x_(j) != 0.0)
                for (const auto& [row, coef] : cols_[j]) xb(row) -= coef * x_(j);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            state_[n_ + i] = St::Basic;
            x_(n_ + i) = xb(i);
        }
        dB_ = Eigen::VectorXd::Zero(m_);
        y_.resize(m_);
        z_.resize(N_);
        cb_.resize(m_);
    }

    int iter_cap() const { return 2000 + 200 * (m_ + N_); }

    bool enterable(int j) const {
        return state_[j] != St::Basic && hi_[j] - lo_[j] > 1e-12;
    }

    // Infeasibility signs and total; returns total infeasibility.
    double infeasibility() {
        double total = 0.0;
        for (int i = 0; i < m_; ++i) {
            const int col = basis_[i];
            const double v = x_(col);
            if (v < lo_[col] - kFeasTol) {
                dB_(i) = -1.0;
                total += lo_[col] - v;
            } else if (v > hi_[col] + kFeasTol) {
                dB_(i) = 1.0;
                total += v - hi_[col];
            } else {
                dB_(i) = 0.0;
            }
        }
        return total;
    }

    // Move entering column q in direction sigma until a bound blocks. Returns
    // the step, kInf if unblocked (unbounded direction). phase1 classifies
    // blocking rows by their current infeasibility sign in dB_.
    double step(int q, int sigma, bool phase1, bool bland) {
        y_ = T_.col(q);
        double t_best = state_[q] == St::FreeZero ? kInf : hi_[q] - lo_[q];
        int r_best = -1;     // -1: entering hits its own opposite bound
        double piv_best = 0.0;

        for (int i = 0; i < m_; ++i) {
            const double yi = y_(i);
            if (std::abs(yi) <= kPivTol) continue;
            const double rate = -sigma * yi;
            const int col = basis_[i];
            const double v = x_(col);
            const int cls = phase1 ? static_cast<int>(dB_(i)) : 0;
            double t = kInf;
            if (cls == 0) {
                if (rate < 0 && lo_[col] > -kInf)
                    t = (v - lo_[col]) / -rate;
                else if (rate > 0 && hi_[col] < kInf)
                    t = (hi_[col] - v) / rate;
            } else if (cls < 0) {
                // below its lower bound: blocks where it regains feasibility
                if (rate > 0) t = (lo_[col] - v) / rate;
            } else {
                if (rate < 0) t = (v - hi_[col]) / -rate;
            }
            if (t == kInf) continue;
            t = std::max(t, 0.0);
            bool take = false;
            if (t < t_best - kRatioTieTol) {
                take = true;
            } else if (t <= t_best + kRatioTieTol && r_best >= 0) {
                if (bland)
                    take = col < basis_[r_best];
                else
                    take = std::abs(yi) > piv_best + 1e-12 ||
                           (std::abs(std::abs(yi) - piv_best) <= 1e-12 && col < basis_[r_best]);
            } else if (t <= t_best + kRatioTieTol && r_best < 0 && t < t_best) {
                take = true; // strictly smaller step; the bound flip wins exact ties
            }
            if (take) {
                t_best = t;
                r_best = i;
                piv_best = std::abs(yi);
            }
        }

        if (t_best == kInf) return kInf;

        if (t_best > 0.0) {
            x_(q) += sigma * t_best;
            for (int i = 0; i < m_; ++i) x_(basis_[i]) -= sigma * t_best * y_(i);
        }
        if (r_best < 0) {
            // bound flip
            state_[q] = sigma > 0 ? St::AtUpper : St::AtLower;
            x_(q) = sigma > 0 ? hi_[q] : lo_[q];
        } else {
            const int leave = basis_[r_best];
            const double vl = x_(leave);
            // snap the leaving variable onto the bound it hit
            if (lo_[leave] > -kInf &&
                (hi_[leave] == kInf || std::abs(vl - lo_[leave]) <= std::abs(vl - hi_[leave]))) {
                state_[leave] = St::AtLower;
                x_(leave) = lo_[leave];
            } else {
                state_[leave] = St::AtUpper;
                x_(leave) = hi_[leave];
            }
            basis_[r_best] = q;
            state_[q] = St::Basic;
            pivot(r_best, q);
        }
        return t_best;
    }

    void pivot(int r, int q) {
        const double piv = T_(r, q);
        T_.row(r) /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = T_(i, q);
            if (std::abs(f) > 1e-12) T_.row(i) -= f * T_.row(r);
        }
    }

    bool phase1() {
        int degen = 0, iters = 0;
        bool bland = false;
        while (true) {
            if (infeasibility() <= kFeasTol) return true;
            z_.noalias() = T_.transpose() * dB_;
            int q = -1, sigma = 0;
            double best = kOptTol;
            for (int j = 0; j < N_; ++j) {
                if (!enterable(j)) continue;
                const double zj = z_(j);
                int s = 0;
                if ((state_[j] == St::AtLower || state_[j] == St::FreeZero) && zj > kOptTol)
                    s = 1;
                else if ((state_[j] == St::AtUpper || state_[j] == St::FreeZero) && zj < -kOptTol)
                    s = -1;
                if (s == 0) continue;
                if (bland) {
                    q = j;
                    sigma = s;
                    break;
                }
                if (std::abs(zj) > best) {
                    best = std::abs(zj);
                    q = j;
                    sigma = s;
                }
            }
            if (q < 0) return false; // stuck infeasible
            const double t = step(q, sigma, true, bland);
            if (t == kInf) throw SolverError("simplex: unbounded phase-1 direction");
            if (t <= 1e-10) {
                if (++degen >= kBlandAfter) bland = true;
            } else {
                degen = 0;
                bland = false;
            }
            if (++iters > iter_cap()) throw SolverError("simplex: phase-1 iteration limit");
        }
    }

    // true: optimal; false: unbounded
    bool phase2() {
        int degen = 0, iters = 0;
        bool bland = false;
        while (true) {
            for (int i = 0; i < m_; ++i) cb_(i) = cost_(basis_[i]);
            z_ = cost_;
            z_.noalias() -= T_.transpose() * cb_;
            int q = -1, sigma = 0;
            double best = kOptTol;
            for (int j = 0; j < N_; ++j) {
                if (!enterable(j)) continue;
                const double zj = z_(j);
                int s = 0;
                if ((state_[j] == St::AtLower || state_[j] == St::FreeZero) && zj < -kOptTol)
                    s = 1;
                else if ((state_[j] == St::AtUpper || state_[j] == St::FreeZero) && zj > kOptTol)
                    s = -1;
                if (s == 0) continue;
                if (bland) {
                    q = j;
                    sigma = s;
                    break;
                }
                if (std::abs(zj) > best) {
                    best = std::abs(zj);
                    q = j;
                    sigma = s;
                }
            }
            if (q < 0) return true;
            const double t = step(q, sigma, false, bland);
            if (t == kInf) return false;
            if (t <= 1e-10) {
                if (++degen >= kBlandAfter) bland = true;
            } else {
                degen = 0;
                bland = false;
            }
            if (++iters > iter_cap()) throw SolverError("simplex: phase-2 iteration limit");
        }
    }

    bool residual_ok() const {
        double worst = 0.0;
        Eigen::VectorXd r = b_;
        for (int j = 0; j < n_; ++j)
            if (x_(j) != 0.0)
                for (const auto& [row, coef] : cols_[j]) r(row) -= coef * x_(j);
        for (int i = 0; i < m_; ++i) r(i) -= x_(n_ + i);
        if (m_ > 0) worst = r.cwiseAbs().maxCoeff();
        const double scale = 1.0 + (m_ > 0 ? b_.cwiseAbs().maxCoeff() : 0.0);
        return worst <= 1e-6 * scale;
    }

    void refactor() {
        Eigen::MatrixXd B(m_, m_);
        B.setZero();
        for (int i = 0; i < m_; ++i) {
            const int col = basis_[i];
            if (col < n_) {
                for (const auto& [row, coef] : cols_[col]) B(row, i) = coef;
            } else {
                B(col - n_, i) = 1.0;
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m_, N_);
        for (int j = 0; j < n_; ++j)
            for (const auto& [row, coef] : cols_[j]) D(row, j) = coef;
        for (int i = 0; i < m_; ++i) D(i, n_ + i) = 1.0;
        T_ = lu.solve(D);

        Eigen::VectorXd rhs = b_;
        for (int j = 0; j < N_; ++j) {
            if (state_[j] == St::Basic || x_(j) == 0.0) continue;
            if (j < n_) {
                for (const auto& [row, coef] : cols_[j]) rhs(row) -= coef * x_(j);
            } else {
                rhs(j - n_) -= x_(j);
            }
        }
        const Eigen::VectorXd xb = lu.solve(rhs);
        for (int i = 0; i < m_; ++i) x_(basis_[i]) = xb(i);
    }
};

} // namespace

LpResult solve_relaxation(const Model& model, const std::vector<double>& lo,
                          const std::vector<double>& hi) {
    for (size_t j = 0; j < model.vars.size(); ++j)
        if (lo[j] > hi[j] + 1e-12) return {LpStatus::Infeasible, {}, 0.0};
    Simplex s(model, lo, hi);
    return s.solve();
}

} // namespace dmclp::lp
