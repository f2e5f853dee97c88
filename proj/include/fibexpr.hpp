#pragma once

#include "fibexpr/decomposer.hpp"
#include "fibexpr/error.hpp"
#include "fibexpr/expression.hpp"
#include "fibexpr/fib_graph.hpp"
#include "fibexpr/method.hpp"
#include "fibexpr/modular.hpp"
#include "fibexpr/optimizer.hpp"
#include "fibexpr/polynomial.hpp"
#include "fibexpr/table.hpp"
#include "fibexpr/text.hpp"
#include "fibexpr/verify.hpp"
