#pragma once

#include "confstab/integer.hpp"
#include "confstab/padic.hpp"
#include "confstab/coefficients.hpp"
#include "confstab/conf_algebra.hpp"
#include "confstab/degree_calculus.hpp"
#include "confstab/stability_oracle.hpp"
#include "confstab/loop_homology.hpp"
#include "confstab/sphere_les.hpp"
