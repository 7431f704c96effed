#pragma once

#include "nsplit/bch.hpp"
#include "nsplit/butcher.hpp"
#include "nsplit/catalog.hpp"
#include "nsplit/csv.hpp"
#include "nsplit/fitting.hpp"
#include "nsplit/linalg.hpp"
#include "nsplit/method_table.hpp"
#include "nsplit/methods.hpp"
#include "nsplit/problems.hpp"
#include "nsplit/reference.hpp"
#include "nsplit/serialize.hpp"
#include "nsplit/split_ode.hpp"
#include "nsplit/stepper.hpp"
#include "nsplit/study.hpp"
#include "nsplit/svg.hpp"
