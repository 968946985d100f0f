#pragma once

#include "blockpos/bp_exact.hpp"
#include "blockpos/family.hpp"
#include "blockpos/matrix.hpp"
#include "blockpos/operator.hpp"
#include "blockpos/poly.hpp"
#include "blockpos/quartic.hpp"
#include "blockpos/rational.hpp"
#include "blockpos/search.hpp"
