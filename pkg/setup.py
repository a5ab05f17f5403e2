from setuptools import setup

# 以使用說明作為長描述
try:
    with open("使用說明.md", "r", encoding="utf-8") as fh:
        long_description = fh.read()
except FileNotFoundError:
    long_description = "超幾何級數代數性分類器：以收縮與交錯判準精確判定多項式、代數或超越。"

setup(
    name="hypergeometric-algebraicity",
    version="1.0.0",
    description="超幾何級數代數性分類器 - 精確判定、追蹤輸出與驗證預言",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=[
        "batch_manager",
        "classification_manager",
        "config_params",
        "contraction",
        "exact_core",
        "expression_parser",
        "hypergeom_params",
        "interlacing_criteria",
        "main_manager",
        "path_utils",
        "series_oracle",
        "svg_diagram_generator",
        "trace_report_generator",
    ],
    include_package_data=True,
    install_requires=[
        "sympy>=1.12",
        "numpy>=1.18.0",
        "pandas>=1.0.0",
    ],
    extras_require={
        "dev": [
            "pytest>=6.0",
            "pytest-cov>=2.0",
            "hypothesis>=6.0",
            "black>=21.0",
            "flake8>=3.8",
        ],
    },
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "hypalg=main_manager:main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Natural Language :: Chinese (Traditional)",
        "Natural Language :: English",
    ],
    keywords="hypergeometric algebraic function interlacing contraction 超幾何 代數函數",
    data_files=[("", ["golden_corpus.csv"])],
    zip_safe=False,
)
