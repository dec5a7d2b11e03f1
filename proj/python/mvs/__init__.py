"""Thin dict-level veneer over the _mvs extension's JSON-string API."""

import json

import _mvs
from _mvs import BudgetExceeded, Error, ParseError, UnknownVerdict

__all__ = [
    "BudgetExceeded",
    "Error",
    "ParseError",
    "UnknownVerdict",
    "cone_contains",
    "discriminate",
    "fingerprint",
    "gamma_image",
    "invariants",
    "levels",
    "state_eval",
    "synthesize_family",
    "verify",
    "verify_divisibility",
]


def synthesize_family(omega, count=1, betas=(), eps="1/1000000000"):
    return json.loads(_mvs.synthesize_family(omega, count, list(betas), eps))


def invariants(descriptor, eps="1/1000000000", depth=120):
    return json.loads(_mvs.invariants(json.dumps(descriptor), eps, depth))


def levels(descriptor, depth=10):
    return json.loads(_mvs.levels(json.dumps(descriptor), depth))


def verify(descriptor, depth=120):
    return json.loads(_mvs.verify(json.dumps(descriptor), depth))


def fingerprint(member, eps="1/1000000000"):
    return json.loads(_mvs.fingerprint(json.dumps(member), eps))


def discriminate(a, b, eps="1/1000000000"):
    return json.loads(_mvs.discriminate(json.dumps(a), json.dumps(b), eps))


def cone_contains(descriptor, x, y, eps="1/1000000000"):
    return json.loads(_mvs.cone_contains(json.dumps(descriptor), x, y, eps))


def gamma_image(descriptor, level, m1, m2):
    return json.loads(_mvs.gamma_image(json.dumps(descriptor), level, m1, m2))


def state_eval(descriptor, x, y, t="0", eps="1/1000000000"):
    return json.loads(_mvs.state_eval(json.dumps(descriptor), x, y, t, eps))


def verify_divisibility(descriptor, K=50, depth=400):
    return json.loads(_mvs.verify_divisibility(json.dumps(descriptor), K, depth))
