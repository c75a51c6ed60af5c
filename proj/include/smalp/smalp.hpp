#pragma once

#include "smalp/engine.hpp"
#include "smalp/error.hpp"
#include "smalp/lattice.hpp"
#include "smalp/symsubst.hpp"
#include "smalp/syntax.hpp"
#include "smalp/tuner.hpp"
#include "smalp/unify.hpp"
