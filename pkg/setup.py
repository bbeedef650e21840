import re
from setuptools import setup, find_packages

with open('README.md', 'r') as fh:
    long_description = fh.read()

version_str = None
VERSION_FILE = "tau_loop/_version.py"
with open(VERSION_FILE, "rt") as vh:
    for _line in vh:
        mo = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]", _line, re.M)
        if mo:
            version_str = mo.group(1)
            break

if version_str is None:
    raise RuntimeError("Unable to find version string in {}".format(VERSION_FILE))

setup(
    name='tau-loop',
    description='Exact representation theory of loop Affine-Virasoro algebras',
    long_description=long_description,
    long_description_content_type='text/markdown',
    version=version_str,
    author='the tau-loop developers',
    platforms='Linux-86_x64',
    packages=find_packages(exclude=['tests']),
    license='GNU General Public License v3',
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.7',

    install_requires=[
        'numpy>=1.17',
        'pyyaml>=5.3.1',
        'sympy>=1.9',
        'tqdm>=4.45.0'
    ],

    extras_require={
        'test': ['pytest>=7.0'],
    },

    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: GNU General Public License v3',
        'Operating System :: POSIX :: Linux',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Development Status :: 3 - Alpha'
    ],

    entry_points={
        'console_scripts': ['tau-loop=tau_loop.command_line:main'],
    }
)
