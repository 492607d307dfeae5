
import io
from setuptools import setup

setup(name="shiftops",
    description='Exact and numeric verification of conformal shift-operator identities',
    long_description=io.open('README.md', encoding='utf-8').read(),
    long_description_content_type='text/markdown',
    version="0.1.0",
    license="MIT",
    packages=["shiftops"],
    install_requires=[
        'numpy >= 1.17',
        'sympy >= 1.9',
        'scipy >= 1.4.0',
    ],
    entry_points={'console_scripts': ['shiftops = shiftops.__main__:main']},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
    ],
    python_requires='>=3.8',
    test_suite="tests")
