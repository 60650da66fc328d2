#pragma once

// Arithmetic side of the local colon condition over a Dedekind base.

namespace conductor {

/// e_M does not divide v_M(I) - 1.
bool divisibility_condition(int e_m, int v_m);

/// (v_M(I) - 1) / e_M < v_Q(I) / e_Q.
bool inequality_condition(int v_m, int e_m, int v_q, int e_q);

} // namespace conductor
