#pragma once

#include "z2c/errors.hpp"
#include "z2c/numcore.hpp"
#include "z2c/padic2.hpp"
#include "z2c/ratfun.hpp"
#include "z2c/volkenborn.hpp"
#include "z2c/zeta.hpp"
#include "z2c/linforms.hpp"
#include "z2c/report.hpp"
