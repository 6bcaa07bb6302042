#pragma once

#include "digitsum/digits.hpp"
#include "digitsum/explorer.hpp"
#include "digitsum/inequalities.hpp"
#include "digitsum/report.hpp"
#include "digitsum/report_io.hpp"
#include "digitsum/summatory.hpp"
#include "digitsum/types.hpp"
