#pragma once

#include "kprime/errors.hpp"
#include "kprime/rational.hpp"
#include "kprime/prime_engine.hpp"
#include "kprime/ramanujan.hpp"
#include "kprime/intervals.hpp"
#include "kprime/residue.hpp"
#include "kprime/report_io.hpp"
