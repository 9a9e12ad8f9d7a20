#pragma once

#include <memory>
#include <string>
#include <vector>

#include "uconv/core.hpp"
#include "uconv/grid.hpp"

namespace uconv {

/// Function given by a finite support and a value table; +inf off-support.
/// Proper by construction: at least one finite value, no -inf, no NaN.
class TabFunc {
public:
    TabFunc() = default;
    TabFunc(Support support, std::vector<double> values, std::string name = {})
        : support_(std::make_shared<Support>(std::move(support))),
          vals_(std::move(values)),
          name_(std::move(name)) {
        validate();
    }
    TabFunc(std::shared_ptr<const Support> support, std::vector<double> values, std::string name = {})
        : support_(std::move(support)), vals_(std::move(values)), name_(std::move(name)) {
        validate();
    }

    const Support& support() const { return *support_; }
    std::shared_ptr<const Support> support_ptr() const { return support_; }
    int size() const { return static_cast<int>(vals_.size()); }
    double value(int i) const { return vals_[static_cast<size_t>(i)]; }
    ExtReal value_ext(int i) const { ExtReal e; e.v = vals_[static_cast<size_t>(i)]; return e; }
    const std::vector<double>& values() const { return vals_; }
    const std::string& name() const { return name_; }

    bool in_dom(int i) const { return std::isfinite(vals_[static_cast<size_t>(i)]); }

    std::vector<int> dom_indices() const {
        std::vector<int> d;
        d.reserve(vals_.size());
        for (int i = 0; i < size(); ++i)
            if (in_dom(i)) d.push_back(i);
        return d;
    }

    /// Value at a point, +inf when the point is off the support.
    double value_at(const Vec& p) const {
        auto i = support_->index_of(p);
        return i ? vals_[static_cast<size_t>(*i)] : kInf;
    }

    double min_value() const {
        double m = kInf;
        for (double v : vals_)
            if (v < m) m = v;
        return m;
    }
    double max_finite_value() const {
        double m = -kInf;
        for (double v : vals_)
            if (std::isfinite(v) && v > m) m = v;
        return m;
    }

    TabFunc with_values(std::vector<double> values, std::string name = {}) const {
        return TabFunc(support_, std::move(values), name.empty() ? name_ : std::move(name));
    }

private:
    void validate() const {
        if (!support_ || support_->size() != size())
            throw precondition_error("TabFunc: support/value size mismatch");
        bool any_finite = false;
        for (double v : vals_) {
            if (std::isnan(v) || v == -kInf)
                throw precondition_error("TabFunc: values must be finite or +inf");
            any_finite |= std::isfinite(v);
        }
        if (!any_finite) throw precondition_error("TabFunc: function must be proper");
    }

    std::shared_ptr<const Support> support_;
    std::vector<double> vals_;
    std::string name_;
};

}  // namespace uconv
