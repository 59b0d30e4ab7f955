#pragma once

#include <functional>
#include <string>
#include <utility>

#include "netdiff/model.hpp"

namespace netdiff::detail {

/// Model assembled from metadata plus callables; keeps the per-model files declarative.
class KernelModel : public Model {
public:
    using StepFn = std::function<void(const StepContext&, std::span<const Status>, std::span<Status>, Rng&)>;
    using ValidateFn = std::function<void(const Parameters&, std::size_t)>;
    using PrepareFn = std::function<void(std::span<Status>, const Parameters&, const Graph*, Rng&)>;

    KernelModel(ModelInfo info, StepFn step, ValidateFn validate = {}, PrepareFn prepare = {})
        : info_(std::move(info)), step_(std::move(step)), validate_(std::move(validate)),
          prepare_(std::move(prepare)) {}

    const ModelInfo& info() const override { return info_; }
    void validate(const Parameters& p, std::size_t n) const override {
        if (validate_) validate_(p, n);
    }
    void prepare_initial(std::span<Status> s, const Parameters& p, const Graph* g, Rng& rng) const override {
        if (prepare_) prepare_(s, p, g, rng);
    }
    void step(const StepContext& ctx, std::span<const Status> before, std::span<Status> after,
              Rng& rng) const override {
        step_(ctx, before, after, rng);
    }

private:
    ModelInfo info_;
    StepFn step_;
    ValidateFn validate_;
    PrepareFn prepare_;
};

inline ParamSpec required(std::string name, ParamKind kind, std::string description) {
    return ParamSpec{std::move(name), kind, std::nullopt, std::move(description)};
}

inline ParamSpec optional(std::string name, ParamKind kind, double value, std::string description) {
    return ParamSpec{std::move(name), kind, value, std::move(description)};
}

}  // namespace netdiff::detail
