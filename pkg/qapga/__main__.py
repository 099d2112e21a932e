# -*- coding: utf-8 -*-
import sys

from qapga.cli import main

sys.exit(main())
