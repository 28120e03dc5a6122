#pragma once

#include "fcsim/analysis.hpp"
#include "fcsim/cell.hpp"
#include "fcsim/errors.hpp"
#include "fcsim/harness.hpp"
#include "fcsim/kernel.hpp"
#include "fcsim/ltp.hpp"
#include "fcsim/network.hpp"
#include "fcsim/record.hpp"
#include "fcsim/scenario.hpp"
#include "fcsim/shift_register.hpp"
#include "fcsim/stimulus.hpp"
#include "fcsim/tick.hpp"
#include "fcsim/version.hpp"
