#pragma once

#include "sgdlp/core.hpp"
#include "sgdlp/errors.hpp"
#include "sgdlp/oracles.hpp"
#include "sgdlp/platforms.hpp"
#include "sgdlp/solver.hpp"
#include "sgdlp/structure.hpp"
