#pragma once

#include "proxcert/certificates.hpp"
#include "proxcert/fixtures.hpp"
#include "proxcert/functions.hpp"
#include "proxcert/io.hpp"
#include "proxcert/oracles.hpp"
#include "proxcert/problem.hpp"
#include "proxcert/rng.hpp"
#include "proxcert/solvers.hpp"
#include "proxcert/suites.hpp"
#include "proxcert/types.hpp"
