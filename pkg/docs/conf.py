#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# splitlora documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

# The package is imported from the parent folder, so that autodoc works
# without installing it.
import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import splitlora

# -- General configuration ---------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode']

source_suffix = '.rst'

master_doc = 'index'

project = u'splitlora'
copyright = u"2026, Jonas Teufel"
author = u"Jonas Teufel"

version = splitlora.__version__
release = splitlora.__version__

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'


# -- Options for HTML output -------------------------------------------

html_theme = 'sphinx_rtd_theme'
