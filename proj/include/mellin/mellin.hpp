#pragma once

#include "mellin/errors.hpp"
#include "mellin/rational.hpp"
#include "mellin/ore/operator.hpp"
#include "mellin/ore/shift_polynomial.hpp"
#include "mellin/ore/twisted_action.hpp"
#include "mellin/transform/functor.hpp"
#include "mellin/opparse/opparse.hpp"
#include "mellin/asymptotics/tail_series.hpp"
#include "mellin/asymptotics/koszul.hpp"
#include "mellin/numerics/quadrature.hpp"
#include "mellin/numerics/test_function.hpp"
#include "mellin/numerics/report.hpp"
#include "mellin/numerics/moments.hpp"
#include "mellin/numerics/convolution.hpp"
#include "mellin/numerics/ray_mellin.hpp"
#include "mellin/numerics/verify.hpp"
#include "mellin/numerics/parameter_expansion.hpp"
