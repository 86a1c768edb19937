#pragma once

#include "quadpencil/error.hpp"
#include "quadpencil/moduli.hpp"
#include "quadpencil/numkit.hpp"
#include "quadpencil/pencil.hpp"
#include "quadpencil/poised.hpp"
#include "quadpencil/reconstruct.hpp"
#include "quadpencil/sampling.hpp"
#include "quadpencil/sl2.hpp"
#include "quadpencil/variety.hpp"
