#pragma once

#include "algebra.hpp"
#include "bitmatrix.hpp"
#include "construction.hpp"
#include "core.hpp"
#include "deduction.hpp"
#include "independence.hpp"
#include "models.hpp"
#include "rules.hpp"
#include "sequent.hpp"
#include "serialize.hpp"
#include "sorites.hpp"
