# -*- coding: utf-8 -*-


class SweepParserError(Exception):
    pass


class SweepLexerError(SweepParserError):
    pass


class SweepGrammarError(SweepParserError):
    pass
