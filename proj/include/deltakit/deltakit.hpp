#pragma once

#include "deltakit/autforms.hpp"
#include "deltakit/bessel.hpp"
#include "deltakit/charsums.hpp"
#include "deltakit/circle.hpp"
#include "deltakit/error.hpp"
#include "deltakit/jet.hpp"
#include "deltakit/modarith.hpp"
#include "deltakit/oscint.hpp"
#include "deltakit/parallel.hpp"
#include "deltakit/pipeline.hpp"
#include "deltakit/quadrature.hpp"
#include "deltakit/report.hpp"
#include "deltakit/window.hpp"
