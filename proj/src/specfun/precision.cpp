#include "cuspdet/common.hpp"

#include <cstdlib>
#include <string>

namespace cuspdet {

void WorkingPrecision::validate() const
{
    if (!(relative_target > 0.0) || !std::isfinite(relative_target))
        throw DomainError("working precision: relative_target must be > 0");
    if (max_refinement_steps < 1)
        throw DomainError("working precision: max_refinement_steps must be >= 1");
}

static WorkingPrecision load_precision()
{
    WorkingPrecision wp;
    if (const char* env = std::getenv("CUSPDET_PRECISION")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) wp.relative_target = v;
    }
    return wp;
}

const WorkingPrecision& default_precision()
{
    static const WorkingPrecision wp = load_precision();
    return wp;
}

}  // namespace cuspdet
