#pragma once

// Umbrella header.

#include "heiq/adjoint.hpp"
#include "heiq/algebra.hpp"
#include "heiq/bimap.hpp"
#include "heiq/census.hpp"
#include "heiq/centroid.hpp"
#include "heiq/error.hpp"
#include "heiq/ff.hpp"
#include "heiq/group.hpp"
#include "heiq/invariants.hpp"
#include "heiq/io.hpp"
#include "heiq/isotest.hpp"
#include "heiq/linalg.hpp"
#include "heiq/recognize.hpp"
#include "heiq/selftest.hpp"
#include "heiq/util.hpp"
