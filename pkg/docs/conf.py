# -*- coding: utf-8 -*-
#
# TinyBunch documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import os
import sys
from importlib.metadata import PackageNotFoundError, version as dist_version

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.coverage',
              'sphinx.ext.viewcode', 'sphinx.ext.intersphinx',
              'sphinx.ext.doctest']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'TinyBunch'
copyright = u'2026, the TinyBunch contributors'

try:
    release = dist_version('tinybunch')
except PackageNotFoundError:
    print('To build the documentation, the distribution information of')
    print('TinyBunch has to be available. Either install the package into')
    print('your development environment or run "pip install -e ." to setup')
    print('the metadata. A virtualenv is recommended!')
    sys.exit(1)

version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output --------------------------------------------------

html_theme = 'alabaster'
html_show_sourcelink = False
htmlhelp_basename = 'TinyBunchdoc'

# -- Options for manual page output -------------------------------------------

man_pages = [
    ('index', 'tinybunch', u'TinyBunch Documentation',
     [u'the TinyBunch contributors'], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
