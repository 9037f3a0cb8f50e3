# -*- coding: utf-8 -*-

"""
    emit
    ~~~~

    Table rendering through jinja2 templates
"""
