#ifndef SYMMETROID_SYMMETROID_HPP
#define SYMMETROID_SYMMETROID_HPP

// Umbrella header: the whole library. The JSON/CLI layer needs json.hpp on
// the include path and is pulled in separately through cli.hpp.

#include "bigint.hpp"
#include "brauer_eval.hpp"
#include "density.hpp"
#include "finite_field.hpp"
#include "interval.hpp"
#include "localfields.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "nullstellensatz.hpp"
#include "pencil.hpp"
#include "quadform.hpp"
#include "upoly.hpp"

#endif // SYMMETROID_SYMMETROID_HPP
