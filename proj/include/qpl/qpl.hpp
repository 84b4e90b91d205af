#pragma once

#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/mspace.hpp"
#include "qpl/quantmean.hpp"
#include "qpl/env.hpp"
#include "qpl/formula.hpp"
#include "qpl/semantics.hpp"
#include "qpl/apps.hpp"
#include "qpl/doctrine.hpp"
