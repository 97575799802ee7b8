#pragma once

#include "sitlab/numeric.hpp"
#include "sitlab/power_series.hpp"
#include "sitlab/permutation.hpp"
#include "sitlab/simples.hpp"
#include "sitlab/lambda.hpp"
#include "sitlab/sit.hpp"
#include "sitlab/sit_io.hpp"
#include "sitlab/enumerate.hpp"
#include "sitlab/asymptotics.hpp"
#include "sitlab/boltzmann.hpp"
#include "sitlab/oracle.hpp"
