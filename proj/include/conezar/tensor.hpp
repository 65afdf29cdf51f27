#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "conezar/linalg.hpp"
#include "conezar/rational.hpp"

namespace conezar {

// Exact symmetric multilinear form of fixed degree on a finite-dimensional
// rational vector space.  Entries are stored once per sorted multi-index.
class SymTensor {
public:
    SymTensor() = default;
    SymTensor(int degree, int dim) : degree_(degree), dim_(dim) {}

    int degree() const { return degree_; }
    int dim() const { return dim_; }

    void set(std::vector<int> idx, Rat value) {
        check_index(idx);
        std::sort(idx.begin(), idx.end());
        if (value == 0)
            entries_.erase(idx);
        else
            entries_[std::move(idx)] = std::move(value);
    }

    Rat value(std::vector<int> idx) const {
        check_index(idx);
        std::sort(idx.begin(), idx.end());
        auto it = entries_.find(idx);
        return it == entries_.end() ? Rat(0) : it->second;
    }

    // Full symmetric evaluation T(args[0], ..., args[degree-1]).
    Rat eval_mixed(const std::vector<RatVec>& args) const {
        if (static_cast<int>(args.size()) != degree_)
            throw MathError("tensor evaluation needs one argument per slot");
        for (const auto& a : args)
            if (static_cast<int>(a.size()) != dim_)
                throw MathError("tensor argument has wrong dimension");
        Rat total(0);
        std::vector<int> idx(static_cast<std::size_t>(degree_), 0);
        while (true) {
            Rat term = value(idx);
            if (term != 0) {
                for (int k = 0; k < degree_; ++k)
                    term *= args[static_cast<std::size_t>(k)]
                                [static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
                total += term;
            }
            int pos = degree_ - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim_ - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
        }
        return total;
    }

    Rat eval_power(const RatVec& v) const {
        return eval_mixed(std::vector<RatVec>(static_cast<std::size_t>(degree_), v));
    }

    // Change of basis: returns the tensor T' with
    // T'(f_{j_1},...,f_{j_d}) = T(S f_{j_1}, ..., S f_{j_d}) where the new
    // basis vectors are the columns of S expressed in the old basis.
    SymTensor pullback(const RatMat& S) const {
        if (S.rows() != dim_) throw MathError("basis change has wrong row count");
        SymTensor out(degree_, S.cols());
        std::vector<RatVec> cols;
        for (int j = 0; j < S.cols(); ++j) cols.push_back(S.col(j));
        std::vector<int> idx(static_cast<std::size_t>(degree_), 0);
        while (true) {
            bool sorted = true;
            for (int k = 0; k + 1 < degree_; ++k)
                if (idx[static_cast<std::size_t>(k)] > idx[static_cast<std::size_t>(k) + 1])
                    sorted = false;
            if (sorted) {
                std::vector<RatVec> args;
                for (int k = 0; k < degree_; ++k)
                    args.push_back(cols[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])]);
                out.set(idx, eval_mixed(args));
            }
            int pos = degree_ - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == S.cols() - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
        }
        return out;
    }

    const std::map<std::vector<int>, Rat>& entries() const { return entries_; }

private:
    void check_index(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != degree_)
            throw MathError("tensor index has wrong length");
        for (int i : idx)
            if (i < 0 || i >= dim_) throw MathError("tensor index out of range");
    }

    int degree_ = 0;
    int dim_ = 0;
    std::map<std::vector<int>, Rat> entries_;
};

// Dense double-precision mirror used by the numeric optimizer.  The full
// tensor is materialized including all index permutations, so slot-fixing
// evaluations need no combinatorial bookkeeping.
class SymTensorD {
public:
    SymTensorD() = default;

    static SymTensorD from_exact(const SymTensor& t) {
        SymTensorD d;
        d.degree_ = t.degree();
        d.dim_ = t.dim();
        std::size_t total = 1;
        for (int k = 0; k < d.degree_; ++k) total *= static_cast<std::size_t>(d.dim_);
        d.flat_.assign(total, 0.0);
        std::vector<int> idx(static_cast<std::size_t>(d.degree_), 0);
        for (std::size_t lin = 0; lin < total; ++lin) {
            d.flat_[lin] = to_double(t.value(idx));
            int pos = d.degree_ - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d.dim_ - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos >= 0) ++idx[static_cast<std::size_t>(pos)];
        }
        return d;
    }

    int degree() const { return degree_; }
    int dim() const { return dim_; }

    double eval(const Vec& v) const {
        return contract(v, 0, 0);
    }

    // Gradient of v -> T(v,...,v): degree * T(e_i, v, ..., v).
    Vec grad(const Vec& v) const {
        Vec g = Vec::Zero(dim_);
        std::size_t stride = flat_.size() / static_cast<std::size_t>(dim_);
        for (int i = 0; i < dim_; ++i)
            g[i] = degree_ * contract(v, static_cast<std::size_t>(i) * stride, 1);
        return g;
    }

    // Hessian: degree * (degree - 1) * T(e_i, e_j, v, ..., v).
    Mat hess(const Vec& v) const {
        Mat h = Mat::Zero(dim_, dim_);
        std::size_t stride2 = flat_.size() / static_cast<std::size_t>(dim_ * dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                std::size_t base =
                    (static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                     static_cast<std::size_t>(j)) *
                    stride2;
                h(i, j) = degree_ * (degree_ - 1) * contract(v, base, 2);
            }
        return h;
    }

    double eval_mixed(const std::vector<Vec>& args) const {
        if (static_cast<int>(args.size()) != degree_)
            throw MathError("tensor evaluation needs one argument per slot");
        double total = 0.0;
        std::vector<int> idx(static_cast<std::size_t>(degree_), 0);
        for (std::size_t lin = 0; lin < flat_.size(); ++lin) {
            double term = flat_[lin];
            if (term != 0.0)
                for (int k = 0; k < degree_; ++k)
                    term *= args[static_cast<std::size_t>(k)]
                                [idx[static_cast<std::size_t>(k)]];
            total += term;
            int pos = degree_ - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim_ - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos >= 0) ++idx[static_cast<std::size_t>(pos)];
        }
        return total;
    }

private:
    // Sums flat_[base + tail] * prod_k v[tail_k] over all tails filling the
    // remaining degree - fixed slots.
    double contract(const Vec& v, std::size_t base, int fixed) const {
        int free = degree_ - fixed;
        if (free == 0) return flat_[base];
        double total = 0.0;
        std::vector<int> idx(static_cast<std::size_t>(free), 0);
        std::size_t count = 1;
        for (int k = 0; k < free; ++k) count *= static_cast<std::size_t>(dim_);
        for (std::size_t lin = 0; lin < count; ++lin) {
            double term = flat_[base + lin];
            if (term != 0.0)
                for (int k = 0; k < free; ++k)
                    term *= v[idx[static_cast<std::size_t>(k)]];
            total += term;
            int pos = free - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim_ - 1) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos >= 0) ++idx[static_cast<std::size_t>(pos)];
        }
        return total;
    }

    int degree_ = 0;
    int dim_ = 0;
    std::vector<double> flat_;
};

} // namespace conezar
