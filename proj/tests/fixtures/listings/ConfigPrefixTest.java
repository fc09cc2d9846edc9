package fixtures.config;

import org.junit.Test;

import static org.junit.Assert.*;

public class ConfigPrefixTest {
    private static final String PROP_PREFIX = "prop";
    private static final String SCAN_PREFIX = "scan";
    private TestConfig tc = new TestConfig();

    @Test//Multiple AAA
    public void testGetByPrefix(){
        Config con = new Config();//arrange
        tc.set(PROP_PREFIX);//arrange
        var p = tc.getAllProperties();//act
        assertEquals("prop", p);//assert

        tc.set(SCAN_PREFIX);//arrange
        p = tc.getAllProperties();//act
        assertEquals("scan", p);}//assert
}
