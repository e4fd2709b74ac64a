#pragma once

#include "orthoinv/errors.hpp"
#include "orthoinv/form.hpp"
#include "orthoinv/group.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/linalg.hpp"
#include "orthoinv/multi_index.hpp"
#include "orthoinv/oracle.hpp"
#include "orthoinv/rng.hpp"
#include "orthoinv/scalar.hpp"
#include "orthoinv/slice.hpp"
