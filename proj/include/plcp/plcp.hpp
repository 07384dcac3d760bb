#pragma once

#include "plcp/rational.hpp"
#include "plcp/matrix.hpp"
#include "plcp/lp.hpp"
#include "plcp/model.hpp"
#include "plcp/certificate.hpp"
#include "plcp/geometry.hpp"
#include "plcp/lexpert.hpp"
#include "plcp/lemke.hpp"
#include "plcp/explorer.hpp"
#include "plcp/oracle.hpp"
#include "plcp/qp.hpp"
#include "plcp/io.hpp"
#include "plcp/plot.hpp"
