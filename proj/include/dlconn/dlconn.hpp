#pragma once

// Umbrella header.

#include "dlconn/bigint.hpp"
#include "dlconn/counting.hpp"
#include "dlconn/coxeter.hpp"
#include "dlconn/errors.hpp"
#include "dlconn/field.hpp"
#include "dlconn/flag.hpp"
#include "dlconn/io.hpp"
#include "dlconn/report.hpp"
#include "dlconn/twist.hpp"
#include "dlconn/verify.hpp"
