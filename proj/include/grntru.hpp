#pragma once

#include "grntru/arith.hpp"
#include "grntru/attack.hpp"
#include "grntru/bkz.hpp"
#include "grntru/enumeration.hpp"
#include "grntru/errors.hpp"
#include "grntru/group.hpp"
#include "grntru/group_ring.hpp"
#include "grntru/harness.hpp"
#include "grntru/lattice.hpp"
#include "grntru/matrix.hpp"
#include "grntru/ntru.hpp"
#include "grntru/reduction.hpp"
#include "grntru/rng.hpp"
