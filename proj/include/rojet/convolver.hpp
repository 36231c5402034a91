#pragma once

#include <memory>
#include <vector>

#include "rojet/params.hpp"

namespace rojet {

// Cyclic convolution engine bound to one step density. The step grid's
// forward transform is computed once at construction and reused, so each
// applied bit costs one forward and one inverse transform.
//
// Instances are not thread-safe (shared scratch buffers); create one per
// task. Construction and destruction of concurrent instances is safe.
class StepConvolver {
public:
    explicit StepConvolver(const GridDensity& step);
    ~StepConvolver();
    StepConvolver(const StepConvolver&) = delete;
    StepConvolver& operator=(const StepConvolver&) = delete;
    StepConvolver(StepConvolver&&) noexcept;
    StepConvolver& operator=(StepConvolver&&) noexcept;

    std::size_t size() const noexcept { return m_; }

    // v <- cyclic convolution of v with the step grid; v.size() must be size().
    void apply(std::vector<double>& v);

private:
    struct Impl;
    std::size_t m_ = 0;
    std::unique_ptr<Impl> impl_;
};

}  // namespace rojet
