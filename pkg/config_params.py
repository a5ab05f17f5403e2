# 超幾何代數性分類器 - 參數配置檔案

# ===== 版本資訊 =====
TOOL_VERSION = "1.0.0"
TRACE_SCHEMA_VERSION = 1           # JSON 追蹤文件格式版本
INPUT_SCHEMA_VERSION = 1           # JSON 輸入文件格式版本

# ===== 驗證預言參數 =====
GUARD_TERMS = 10                   # 猜測零化多項式時額外比對的項數（下限）
DEFAULT_GUESS_BIDEGREE = (10, 8)   # 預設 (x 次數, y 次數) 上限
DEFAULT_GUESS_TERMS = 120          # 猜測時使用的級數項數
DEFAULT_RESIDUAL_TERMS = 100       # 微分方程殘差檢查的項數
DEFAULT_PRINT_TERMS = 10           # --terms 未指定數量時輸出的係數個數
DENOMINATOR_SCAN_TERMS = 200       # 分母質數掃描的項數

# ===== 交錯判準參數 =====
LAMBDA_SWEEP_WORKERS = 4           # --parallel 時 λ 掃描的執行緒數

# ===== SVG 圖形參數 =====
SVG_CIRCLE_RADIUS = 60             # 單位圓半徑(像素)
SVG_CELL_SIZE = 170                # 每個 λ 圖格的寬高(像素)
SVG_COLUMNS = 3                    # 每列最多放幾個圓
SVG_POINT_RADIUS = 5               # 參數點半徑(像素)
SVG_TOP_COLOR = "#d62728"          # 分子參數（紅）
SVG_BOTTOM_COLOR = "#1f77b4"       # 分母參數（藍）
SVG_FAILED_COLOR = "#7f7f7f"       # 不交錯時的圓周顏色

# ===== 輸出參數 =====
RESULT_DIR = "result"              # 預設輸出目錄
GOLDEN_CORPUS_FILE = "golden_corpus.csv"
BATCH_REQUIRED_COLUMNS = ["name", "expression"]

# ===== 結束代碼 =====
EXIT_CLASSIFIED = 0                # 成功分類
EXIT_BATCH_MISMATCH = 1            # 批次判定與預期不符
EXIT_INPUT_ERROR = 2               # 語法或驗證錯誤
EXIT_ILL_DEFINED = 3               # 函數無定義（分母參數落在 −ℕ）


def get_runtime_config(**overrides):
    """
    取得執行期配置，關鍵字參數優先於模組常數

    Returns:
        dict: 配置值，另含 'source' 標示哪些鍵被覆寫
    """
    config = {
        "guard_terms": GUARD_TERMS,
        "guess_bidegree": DEFAULT_GUESS_BIDEGREE,
        "guess_terms": DEFAULT_GUESS_TERMS,
        "residual_terms": DEFAULT_RESIDUAL_TERMS,
        "print_terms": DEFAULT_PRINT_TERMS,
        "scan_terms": DENOMINATOR_SCAN_TERMS,
        "lambda_workers": LAMBDA_SWEEP_WORKERS,
        "result_dir": RESULT_DIR,
    }
    source = {}
    for key, value in overrides.items():
        if key not in config:
            raise KeyError(f"unknown configuration key: {key}")
        if value is None:
            continue
        config[key] = value
        source[key] = "override"
    if config["guard_terms"] < GUARD_TERMS:
        raise ValueError(f"guard_terms must be at least {GUARD_TERMS}")
    config["source"] = source
    return config


def print_config(config=None):
    """輸出目前配置"""
    config = config or get_runtime_config()
    print("⚙️  分類器配置")
    print("=" * 40)
    print(f"🔖 版本: {TOOL_VERSION} (trace schema v{TRACE_SCHEMA_VERSION})")
    print(f"🧮 猜測雙次數上限: {config['guess_bidegree']}")
    print(f"📏 猜測項數: {config['guess_terms']} (guard {config['guard_terms']})")
    print(f"📐 殘差檢查項數: {config['residual_terms']}")
    print(f"🔢 分母掃描項數: {config['scan_terms']}")
    print(f"🧵 λ 掃描執行緒: {config['lambda_workers']}")
    print(f"📂 輸出目錄: {config['result_dir']}")
    for key in sorted(config["source"]):
        print(f"   ↳ {key} 已覆寫")
