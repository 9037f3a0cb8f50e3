# -*- coding: utf-8 -*-

"""
Job file grammar::

    sweep gs {
        mu_r = 0;
        mu_t = 0:2:201;
    }
"""


from ply import lex, yacc

from .exc import SweepGrammarError, SweepParserError
from .job import Job, SweepRange
from .lexer import *  # noqa


def p_error(p):
    if p is None:
        raise SweepGrammarError("Grammar error at EOF")
    raise SweepGrammarError("Grammar error %r at line %d" % (p.value, p.lineno))


def p_start(p):
    """start : job_seq"""
    p[0] = p[1]


def p_job_seq(p):
    """job_seq : job_seq job
               |"""
    if len(p) == 1:
        p[0] = []
    else:
        p[0] = p[1] + [p[2]]


def p_job(p):
    """job : SWEEP IDENTIFIER '{' setting_seq '}'"""
    settings = {}
    for name, value, lineno in p[4]:
        if name in settings:
            raise SweepGrammarError("%s is set twice at line %d" % (name, lineno))
        settings[name] = value
    p[0] = Job(p[2], settings, p.lineno(1))


def p_setting_seq(p):
    """setting_seq : setting_seq setting
                   |"""
    if len(p) == 1:
        p[0] = []
    else:
        p[0] = p[1] + [p[2]]


def p_setting(p):
    """setting : IDENTIFIER '=' value ';'"""
    p[0] = (p[1].replace("-", "_"), p[3], p.lineno(1))


def p_value(p):
    """value : number
             | sweep_range
             | LITERAL
             | IDENTIFIER
             | BOOLCONSTANT"""
    p[0] = p[1]


def p_number(p):
    """number : INTCONSTANT
              | DUBCONSTANT"""
    p[0] = p[1]


def p_sweep_range(p):
    """sweep_range : number ':' number ':' INTCONSTANT"""
    lo, hi, steps = p[1], p[3], p[5]
    if steps < 2:
        raise SweepGrammarError(
            "sweep needs at least 2 steps, got %d at line %d" % (steps, p.lineno(2))
        )
    if not lo < hi:
        raise SweepGrammarError(
            "sweep range %r:%r is empty at line %d" % (lo, hi, p.lineno(2))
        )
    p[0] = SweepRange(float(lo), float(hi), steps)


_parsers = {}


def _parser(start):
    if start not in _parsers:
        _parsers[start] = yacc.yacc(
            start=start,
            debug=False,
            write_tables=False,
            errorlog=yacc.NullLogger(),
        )
    return _parsers[start]


def parse(data, lexer=None, parser=None):
    """Parse job file text into a list of `Job` in file order."""
    if lexer is None:
        lexer = lex.lex()
    if parser is None:
        parser = _parser("start")
    lexer.lineno = 1
    return parser.parse(data, lexer=lexer)


def parse_range(text):
    """Parse a single `lo:hi:steps` range, e.g. ``-2:2:41``."""
    lexer = lex.lex()
    lexer.lineno = 1
    return _parser("sweep_range").parse(text, lexer=lexer)


def load(path):
    if not path.endswith(".sweep"):
        raise SweepParserError("Path should end with .sweep")
    with open(path) as fh:
        return parse(fh.read())
