#include "conductor/local_conditions.hpp"

// CONDUCTOR_MUTATE_* are defined only by the deliberately broken test builds.

namespace conductor {

bool divisibility_condition(int e_m, int v_m)
{
#ifdef CONDUCTOR_MUTATE_DIVISIBILITY
    return (v_m - 1) % e_m == 0;
#else
    return (v_m - 1) % e_m != 0;
#endif
}

bool inequality_condition(int v_m, int e_m, int v_q, int e_q)
{
    // cross-multiplied; e_m, e_q > 0
#ifdef CONDUCTOR_MUTATE_INEQUALITY
    return (v_m - 1) * e_q <= v_q * e_m;
#else
    return (v_m - 1) * e_q < v_q * e_m;
#endif
}

} // namespace conductor
