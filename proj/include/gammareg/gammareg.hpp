#pragma once

#include "gammareg/affine.hpp"
#include "gammareg/bauer.hpp"
#include "gammareg/convex_body.hpp"
#include "gammareg/domain.hpp"
#include "gammareg/errors.hpp"
#include "gammareg/expr.hpp"
#include "gammareg/ext_real.hpp"
#include "gammareg/geometry.hpp"
#include "gammareg/grid.hpp"
#include "gammareg/measure.hpp"
#include "gammareg/minimize.hpp"
#include "gammareg/parallel.hpp"
#include "gammareg/point.hpp"
#include "gammareg/point_set.hpp"
#include "gammareg/sampled.hpp"
#include "gammareg/subdiff.hpp"
#include "gammareg/transform.hpp"
#include "gammareg/version.hpp"
