#pragma once

#include "mgk/error.hpp"
#include "mgk/partition.hpp"
#include "mgk/algebra.hpp"
#include "mgk/congruence.hpp"
#include "mgk/commutator.hpp"
#include "mgk/groups.hpp"
#include "mgk/galois.hpp"
#include "mgk/lie.hpp"
#include "mgk/graphs.hpp"
