#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lwb/algebra.hpp"

namespace lwb {

// An algebra together with a set of designated truth values.
class LogicalMatrix {
public:
    LogicalMatrix(FiniteAlgebra algebra, std::vector<int> designated, std::string name = "")
        : algebra_(std::move(algebra)), designated_(std::move(designated)),
          name_(name.empty() ? algebra_.name() : std::move(name)) {
        std::sort(designated_.begin(), designated_.end());
        designated_.erase(std::unique(designated_.begin(), designated_.end()),
                          designated_.end());
        for (int v : designated_)
            if (v < 0 || v >= algebra_.size())
                throw Error("matrix " + name_ + ": designated value " + std::to_string(v) +
                            " outside carrier");
        is_designated_.assign(static_cast<std::size_t>(algebra_.size()), 0);
        for (int v : designated_)
            is_designated_[static_cast<std::size_t>(v)] = 1;
    }

    const FiniteAlgebra& algebra() const { return algebra_; }
    const std::vector<int>& designated() const { return designated_; }
    bool is_designated(int v) const { return is_designated_[static_cast<std::size_t>(v)] != 0; }
    const std::string& name() const { return name_; }
    const Signature& sig() const { return algebra_.sig(); }
    int size() const { return algebra_.size(); }

private:
    FiniteAlgebra algebra_;
    std::vector<int> designated_;
    std::string name_;
    std::vector<char> is_designated_;
};

} // namespace lwb
